//! Truncated multivariate formal power series over a [`FieldCtx`], with
//! explicit precision tracking, composition, compositional inverse, jets
//! and Sylvester resultants.
//!
//! Precision `Finite(N)` means every term of total degree < N is known
//! exactly and nothing is known beyond; `Exact` marks polynomials known in
//! full.  Operations propagate the pessimistic precision documented on
//! each method and raise [`Error::PrecisionExhausted`] instead of returning
//! silently wrong output.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::coeff::{FieldCtx, FieldElem};
use crate::error::{Error, Result};

/// Default working precision when nothing better is known.
pub const DEFAULT_PRECISION: u32 = 32;

/// Exponent tuple with degree-lexicographic ordering: lower total degree
/// first; within a degree, higher power of the earlier variable first, so
/// iteration yields the canonical printing order (x^2, xy, y^2).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn deg(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg()
            .cmp(&other.deg())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Truncation level of a series.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Prec {
    Finite(u32),
    Exact,
}

impl Prec {
    pub fn min(self, other: Prec) -> Prec {
        match (self, other) {
            (Prec::Exact, p) | (p, Prec::Exact) => p,
            (Prec::Finite(a), Prec::Finite(b)) => Prec::Finite(a.min(b)),
        }
    }

    pub fn allows(self, deg: u32) -> bool {
        match self {
            Prec::Exact => true,
            Prec::Finite(n) => deg < n,
        }
    }

    pub fn sub(self, d: u32) -> Prec {
        match self {
            Prec::Exact => Prec::Exact,
            Prec::Finite(n) => Prec::Finite(n.saturating_sub(d)),
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Prec::Finite(n) => Some(n),
            Prec::Exact => None,
        }
    }
}

/// Order of a series: least total degree with a nonzero coefficient.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesOrd {
    Finite(u32),
    /// Zero to the stored precision; `precision_limited` is false only when
    /// the series is exactly zero.
    Infinite { precision_limited: bool },
}

impl SeriesOrd {
    pub fn finite(self) -> Option<u32> {
        match self {
            SeriesOrd::Finite(n) => Some(n),
            SeriesOrd::Infinite { .. } => None,
        }
    }
}

/// A truncated formal power series.
#[derive(Clone)]
pub struct Series {
    vars: Arc<Vec<String>>,
    field: FieldCtx,
    terms: BTreeMap<Mono, FieldElem>,
    prec: Prec,
}

impl PartialEq for Series {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
            && self.field.same_field(&other.field)
            && self.prec == other.prec
            && self.terms == other.terms
    }
}
impl Eq for Series {}

impl Series {
    pub fn zero(vars: &[&str], field: &FieldCtx, prec: Prec) -> Series {
        Series {
            vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()),
            field: field.clone(),
            terms: BTreeMap::new(),
            prec,
        }
    }

    pub fn zero_like(&self) -> Series {
        Series {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: BTreeMap::new(),
            prec: self.prec,
        }
    }

    pub fn constant(vars: &[&str], field: &FieldCtx, c: FieldElem, prec: Prec) -> Series {
        let mut s = Series::zero(vars, field, prec);
        if !field.is_zero(&c) && prec.allows(0) {
            s.terms.insert(Mono(vec![0; s.vars.len()]), c);
        }
        s
    }

    pub fn one(vars: &[&str], field: &FieldCtx, prec: Prec) -> Series {
        let one = field.one();
        Series::constant(vars, field, one, prec)
    }

    /// The variable `name` as a series (exponent 1).
    pub fn var(vars: &[&str], field: &FieldCtx, name: &str, prec: Prec) -> Series {
        let mut s = Series::zero(vars, field, prec);
        let idx = s
            .var_index(name)
            .unwrap_or_else(|| panic!("variable {name} not among {:?}", s.vars));
        let mut exps = vec![0u32; s.vars.len()];
        exps[idx] = 1;
        if prec.allows(1) {
            s.terms.insert(Mono(exps), field.one());
        }
        s
    }

    /// Single monomial c * x^exps.
    pub fn monomial(vars: &[&str], field: &FieldCtx, exps: &[u32], c: FieldElem, prec: Prec) -> Series {
        let mut s = Series::zero(vars, field, prec);
        assert_eq!(exps.len(), s.vars.len());
        let m = Mono(exps.to_vec());
        if !field.is_zero(&c) && prec.allows(m.deg()) {
            s.terms.insert(m, c);
        }
        s
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn prec(&self) -> Prec {
        self.prec
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &FieldElem)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> FieldElem {
        self.terms
            .get(&Mono(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Univariate coefficient access.
    pub fn coeff_at(&self, k: u32) -> FieldElem {
        assert_eq!(self.nvars(), 1);
        self.coeff(&[k])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Least total degree of a nonzero term; flags precision-limited when
    /// the series is zero only to finite precision.
    pub fn ord(&self) -> SeriesOrd {
        match self.terms.keys().next() {
            Some(m) => SeriesOrd::Finite(m.deg()),
            None => SeriesOrd::Infinite {
                precision_limited: matches!(self.prec, Prec::Finite(_)),
            },
        }
    }

    /// Lowest term in deglex order.
    pub fn lowest_term(&self) -> Option<(&Mono, &FieldElem)> {
        self.terms.iter().next()
    }

    fn check_compat(&self, other: &Series) {
        assert_eq!(self.vars, other.vars, "variable mismatch");
        assert!(self.field.same_field(&other.field), "field mismatch");
    }

    fn insert_term(&mut self, m: Mono, c: FieldElem) {
        if !self.field.is_zero(&c) && self.prec.allows(m.deg()) {
            self.terms.insert(m, c);
        }
    }

    fn add_term(&mut self, m: Mono, c: &FieldElem) {
        if self.field.is_zero(c) || !self.prec.allows(m.deg()) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = self.field.add(existing, c);
                if self.field.is_zero(existing) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// Lower the precision (and drop the now-unknown terms).
    pub fn with_prec(&self, prec: Prec) -> Series {
        let prec = self.prec.min(prec);
        let mut out = self.clone();
        out.prec = prec;
        if let Prec::Finite(n) = prec {
            out.terms.retain(|m, _| m.deg() < n);
        }
        out
    }

    pub fn add(&self, other: &Series) -> Series {
        self.check_compat(other);
        let prec = self.prec.min(other.prec);
        let mut out = self.with_prec(prec);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Series) -> Series {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Series {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(c);
        }
        out
    }

    pub fn scale(&self, c: &FieldElem) -> Series {
        if self.field.is_zero(c) {
            return self.zero_like();
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(v, c);
        }
        out.terms.retain(|_, v| !self.field.is_zero(v));
        out
    }

    /// Product; result precision is min of the input precisions.
    pub fn mul(&self, other: &Series) -> Series {
        self.check_compat(other);
        let prec = self.prec.min(other.prec);
        let mut out = Series {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: BTreeMap::new(),
            prec,
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if prec.allows(m.deg()) {
                    out.add_term(m, &self.field.mul(ca, cb));
                }
            }
        }
        out
    }

    pub fn mul_monomial(&self, exps: &[u32], c: &FieldElem) -> Series {
        assert_eq!(exps.len(), self.nvars());
        let shift = Mono(exps.to_vec());
        let mut out = Series {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: BTreeMap::new(),
            prec: self.prec,
        };
        if self.field.is_zero(c) {
            return out;
        }
        for (m, v) in &self.terms {
            let mm = m.mul(&shift);
            if out.prec.allows(mm.deg()) {
                out.insert_term(mm, self.field.mul(v, c));
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Series {
        let mut acc = Series::one(
            &self.vars.iter().map(|s| s.as_str()).collect::<Vec<_>>(),
            &self.field,
            self.prec,
        );
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Partial derivative; precision drops by one.
    pub fn derivative(&self, var: &str) -> Series {
        let idx = self
            .var_index(var)
            .unwrap_or_else(|| panic!("variable {var} not among {:?}", self.vars));
        let mut out = Series {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: BTreeMap::new(),
            prec: self.prec.sub(1),
        };
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[idx] -= 1;
            let coeff = self.field.mul(c, &self.field.from_i64(e as i64));
            out.add_term(Mono(exps), &coeff);
        }
        out
    }

    /// Truncation to total degree ≤ k.  The result is the polynomial
    /// representative, hence `Exact`; requires k < precision.
    pub fn jet(&self, k: u32) -> Result<Series> {
        if !self.prec.allows(k) {
            return Err(Error::PrecisionExhausted(format!(
                "jet at degree {k} requested from a series of precision {:?}",
                self.prec
            )));
        }
        let mut out = self.clone();
        out.prec = Prec::Exact;
        out.terms.retain(|m, _| m.deg() <= k);
        Ok(out)
    }

    /// Substitute `args[i]` for the i-th variable; every argument must have
    /// positive order.  Result precision is the minimum input precision.
    pub fn compose(&self, args: &[Series]) -> Result<Series> {
        if args.len() != self.nvars() {
            return Err(Error::InvalidInput(format!(
                "composition needs {} arguments, got {}",
                self.nvars(),
                args.len()
            )));
        }
        let mut prec = self.prec;
        for a in args {
            if let SeriesOrd::Finite(0) = a.ord() {
                return Err(Error::OrderZeroArgument);
            }
            if !a.field.same_field(&self.field) {
                return Err(Error::FieldMismatch);
            }
            prec = prec.min(a.prec);
        }
        let template = match args.first() {
            Some(a) => a,
            None => {
                // zero-variable series is a constant
                return Ok(self.clone());
            }
        };
        for a in args {
            if a.vars != template.vars {
                return Err(Error::VariableMismatch(
                    template.vars.join(","),
                    a.vars.join(","),
                ));
            }
        }
        let out_vars: Vec<&str> = template.vars.iter().map(|s| s.as_str()).collect();
        let mut out = Series::zero(&out_vars, &self.field, prec);
        // memoized powers per argument
        let mut powers: Vec<Vec<Series>> = args
            .iter()
            .map(|a| vec![Series::one(&out_vars, &self.field, prec), a.with_prec(prec)])
            .collect();
        for (m, c) in &self.terms {
            let mut term = Series::constant(&out_vars, &self.field, c.clone(), prec);
            for (i, &e) in m.0.iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&powers[i][1]);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Compositional inverse of a univariate series of order one:
    /// returns v with self(v) = t to the working precision.
    pub fn invert_series(&self) -> Result<Series> {
        if self.nvars() != 1 {
            return Err(Error::InvalidInput(
                "compositional inverse needs a univariate series".into(),
            ));
        }
        if self.ord() != SeriesOrd::Finite(1) {
            return Err(Error::OrderNotOne);
        }
        let f = &self.field;
        let u1 = self.coeff_at(1);
        let u1_inv = f.inv(&u1)?;
        let bound = match self.prec {
            Prec::Finite(n) => n,
            Prec::Exact => DEFAULT_PRECISION,
        };
        let prec = Prec::Finite(bound);
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut v = Series::monomial(&vars, f, &[1], u1_inv.clone(), prec);
        for n in 2..bound {
            // coefficient of t^n in self(v) must vanish
            let w = self.with_prec(Prec::Finite(n + 1)).compose(&[v.with_prec(Prec::Finite(n + 1))])?;
            let c = w.coeff_at(n);
            if f.is_zero(&c) {
                continue;
            }
            let corr = f.neg(&f.mul(&c, &u1_inv));
            v.add_term(Mono(vec![n]), &corr);
        }
        Ok(v)
    }

    /// Multiplicative inverse of a unit (nonzero constant term).  `cap`
    /// bounds the expansion when the input is exact.
    pub fn inverse_unit(&self, cap: Prec) -> Result<Series> {
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let one = Series::one(&vars, &self.field, self.prec.min(cap));
        one.exact_div(self, cap)
    }

    /// n-th root of a unit series whose constant term already has an n-th
    /// root in the field; requires the characteristic not to divide n.
    pub fn nth_root_unit(&self, n: u64, root_of_constant: &FieldElem, cap: Prec) -> Result<Series> {
        let f = &self.field;
        let c0 = self.coeff(&vec![0; self.nvars()]);
        if f.is_zero(&c0) {
            return Err(Error::InvalidInput("nth root of a non-unit".into()));
        }
        if f.pow(root_of_constant, n) != c0 {
            return Err(Error::InvalidInput("supplied constant is not an n-th root".into()));
        }
        let p = f.characteristic();
        if p != 0 && n.is_multiple_of(p) {
            return Err(Error::PInseparableRoot);
        }
        let prec = self.prec.min(cap);
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        // Newton iteration: v <- v - (v^n - u) / (n v^(n-1))
        let mut v = Series::constant(&vars, f, root_of_constant.clone(), prec);
        let target = self.with_prec(prec);
        let n_elem = f.from_i64(n as i64);
        loop {
            let vn = v.pow(n as u32);
            let err = vn.sub(&target);
            if err.is_zero() {
                break;
            }
            let deriv = v.pow(n as u32 - 1).scale(&n_elem);
            let delta = err.exact_div(&deriv, prec)?;
            v = v.sub(&delta);
        }
        Ok(v)
    }

    /// Exact quotient self / d in the series ring, determined to precision
    /// min(precisions, cap) − ord(d).  Errors when the quotient does not
    /// exist as a power series.
    pub fn exact_div(&self, d: &Series, cap: Prec) -> Result<Series> {
        self.check_compat(d);
        let f = &self.field;
        let e = match d.ord() {
            SeriesOrd::Finite(e) => e,
            SeriesOrd::Infinite { .. } => {
                return Err(Error::InvalidInput("division by zero series".into()))
            }
        };
        // precision the quotient is determined to by the truncated inputs;
        // `cap` additionally bounds the computation when both are exact
        let theoretical = self.prec.min(d.prec).sub(e);
        let computed = theoretical.min(cap.sub(e));
        if self.is_zero() {
            let mut z = self.zero_like();
            z.prec = theoretical;
            return Ok(z);
        }
        let s = match self.ord() {
            SeriesOrd::Finite(s) => s,
            SeriesOrd::Infinite { .. } => unreachable!(),
        };
        if s < e {
            return Err(Error::InvalidInput(
                "quotient is not a power series (order drop)".into(),
            ));
        }
        // lowest homogeneous form of the divisor
        let de: Vec<(Mono, FieldElem)> = d
            .terms
            .iter()
            .take_while(|(m, _)| m.deg() == e)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        let degree_bound = match computed {
            Prec::Finite(n) => n,
            // exact division of polynomials terminates; generous guard
            Prec::Exact => 4096,
        };
        // the remainder is kept at the full input precision so genuine
        // termination (exact quotient) remains distinguishable from
        // truncation under a finite cap
        let input_prec = self.prec.min(d.prec);
        let mut h = Series {
            vars: self.vars.clone(),
            field: f.clone(),
            terms: BTreeMap::new(),
            prec: computed,
        };
        let mut rem = self.with_prec(input_prec);
        let mut j = s.saturating_sub(e);
        loop {
            if rem.is_zero() {
                // the division terminated within the inputs' precision: the
                // quotient is determined to the full theoretical precision
                // (exact for exact inputs)
                h.prec = theoretical;
                break;
            }
            if j >= degree_bound {
                if computed == Prec::Exact {
                    return Err(Error::InvalidInput(
                        "exact division does not terminate (quotient not polynomial)".into(),
                    ));
                }
                break;
            }
            // component of rem at degree j + e
            let comp: Vec<(Mono, FieldElem)> = rem
                .terms
                .iter()
                .skip_while(|(m, _)| m.deg() < j + e)
                .take_while(|(m, _)| m.deg() == j + e)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect();
            if comp.is_empty() {
                j += 1;
                continue;
            }
            let hj = divide_forms(f, &comp, &de).ok_or_else(|| {
                Error::PrecisionExhausted(
                    "series division failed at the form level (insufficient precision or inexact quotient)"
                        .into(),
                )
            })?;
            let mut hj_form = Series {
                vars: self.vars.clone(),
                field: f.clone(),
                terms: BTreeMap::new(),
                prec: input_prec,
            };
            for (m, c) in hj {
                hj_form.insert_term(m.clone(), c.clone());
                if computed.allows(m.deg()) {
                    h.terms.insert(m, c);
                }
            }
            rem = rem.sub(&hj_form.mul(d));
            j += 1;
        }
        Ok(h)
    }

    /// Map every coefficient into another field.
    pub fn map_coeffs(
        &self,
        target: &FieldCtx,
        f: &mut dyn FnMut(&FieldElem) -> Result<FieldElem>,
    ) -> Result<Series> {
        let mut out = Series {
            vars: self.vars.clone(),
            field: target.clone(),
            terms: BTreeMap::new(),
            prec: self.prec,
        };
        for (m, c) in &self.terms {
            let v = f(c)?;
            out.insert_term(m.clone(), v);
        }
        Ok(out)
    }

    /// Substitute exact field values for a subset of variables and project
    /// them away.  Requires the series to be exact (polynomial) so the
    /// substituted result keeps a meaningful precision.
    pub fn substitute_values(&self, assignments: &[(&str, FieldElem)]) -> Result<Series> {
        if matches!(self.prec, Prec::Finite(_)) {
            // only the substituted variables must occur polynomially; for a
            // truncated series every substituted exponent is entangled with
            // the truncation, so demand exactness
            return Err(Error::PrecisionExhausted(
                "substituting values into a truncated series".into(),
            ));
        }
        let mut idx: Vec<(usize, FieldElem)> = vec![];
        for (name, v) in assignments {
            let i = self
                .var_index(name)
                .ok_or_else(|| Error::InvalidInput(format!("no variable {name}")))?;
            idx.push((i, v.clone()));
        }
        let keep: Vec<usize> = (0..self.nvars())
            .filter(|i| !idx.iter().any(|(j, _)| j == i))
            .collect();
        let keep_names: Vec<&str> = keep.iter().map(|&i| self.vars[i].as_str()).collect();
        let mut out = Series::zero(&keep_names, &self.field, Prec::Exact);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (i, v) in &idx {
                coeff = self.field.mul(&coeff, &self.field.pow(v, m.0[*i] as u64));
            }
            let exps: Vec<u32> = keep.iter().map(|&i| m.0[i]).collect();
            out.add_term(Mono(exps), &coeff);
        }
        Ok(out)
    }

    /// Reinterpret over a larger variable list (new variables get exponent 0).
    pub fn extend_vars(&self, vars: &[&str]) -> Result<Series> {
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::VariableMismatch(self.vars.join(","), vars.join(",")))
            })
            .collect::<Result<_>>()?;
        let mut out = Series::zero(vars, &self.field, self.prec);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; vars.len()];
            for (old, &new) in positions.iter().enumerate() {
                exps[new] = m.0[old];
            }
            out.insert_term(Mono(exps), c.clone());
        }
        Ok(out)
    }

    /// Project onto a sub-list of variables; the dropped ones must not occur.
    pub fn project_vars(&self, vars: &[&str]) -> Result<Series> {
        let positions: Vec<usize> = vars
            .iter()
            .map(|w| {
                self.var_index(w)
                    .ok_or_else(|| Error::VariableMismatch(self.vars.join(","), vars.join(",")))
            })
            .collect::<Result<_>>()?;
        let mut out = Series::zero(vars, &self.field, self.prec);
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && !positions.contains(&i) {
                    return Err(Error::InvalidInput(format!(
                        "variable {} still occurs",
                        self.vars[i]
                    )));
                }
            }
            let exps: Vec<u32> = positions.iter().map(|&i| m.0[i]).collect();
            out.insert_term(Mono(exps), c.clone());
        }
        Ok(out)
    }

    pub fn rename_vars(&self, vars: &[&str]) -> Series {
        assert_eq!(vars.len(), self.nvars());
        Series {
            vars: Arc::new(vars.iter().map(|s| s.to_string()).collect()),
            field: self.field.clone(),
            terms: self.terms.clone(),
            prec: self.prec,
        }
    }

    /// Multiply a univariate series by t^delta (delta may be negative when
    /// every exponent admits it).
    pub fn shift_univar(&self, delta: i64) -> Result<Series> {
        assert_eq!(self.nvars(), 1);
        let mut out = Series {
            vars: self.vars.clone(),
            field: self.field.clone(),
            terms: BTreeMap::new(),
            prec: match self.prec {
                Prec::Exact => Prec::Exact,
                Prec::Finite(n) => {
                    let np = n as i64 + delta;
                    if np <= 0 {
                        return Err(Error::PrecisionExhausted("shift below precision".into()));
                    }
                    Prec::Finite(np as u32)
                }
            },
        };
        for (m, c) in &self.terms {
            let e = m.0[0] as i64 + delta;
            if e < 0 {
                return Err(Error::InvalidInput("negative exponent after shift".into()));
            }
            out.insert_term(Mono(vec![e as u32]), c.clone());
        }
        Ok(out)
    }

    /// Scalar normalization: divide by the coefficient of the lowest term
    /// so it becomes 1.  No-op on zero series.
    pub fn normalize_lowest(&self) -> Series {
        match self.lowest_term() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = self.field.inv(c).expect("nonzero lowest coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Equality of all terms of total degree < upto.
    pub fn eq_to_prec(&self, other: &Series, upto: u32) -> bool {
        if self.vars != other.vars || !self.field.same_field(&other.field) {
            return false;
        }
        let a: Vec<_> = self.terms.iter().filter(|(m, _)| m.deg() < upto).collect();
        let b: Vec<_> = other.terms.iter().filter(|(m, _)| m.deg() < upto).collect();
        a == b
    }
}

/// Exact division of homogeneous forms given as sorted term lists; returns
/// `None` when the quotient does not exist.
fn divide_forms(
    f: &FieldCtx,
    num: &[(Mono, FieldElem)],
    den: &[(Mono, FieldElem)],
) -> Option<Vec<(Mono, FieldElem)>> {
    let mut rem: BTreeMap<Mono, FieldElem> = num.iter().cloned().collect();
    let (lt_den_m, lt_den_c) = den.last()?;
    let lt_den_inv = f.inv(lt_den_c).ok()?;
    let mut quot: Vec<(Mono, FieldElem)> = vec![];
    while let Some((m, c)) = rem.iter().next_back().map(|(m, c)| (m.clone(), c.clone())) {
        if !lt_den_m.divides(&m) {
            return None;
        }
        let qm = m.div(lt_den_m);
        let qc = f.mul(&c, &lt_den_inv);
        for (dm, dc) in den {
            let t = dm.mul(&qm);
            let sub = f.mul(dc, &qc);
            match rem.get_mut(&t) {
                Some(v) => {
                    *v = f.sub(v, &sub);
                    if f.is_zero(v) {
                        rem.remove(&t);
                    }
                }
                None => {
                    if !f.is_zero(&sub) {
                        rem.insert(t, f.neg(&sub));
                    }
                }
            }
        }
        quot.push((qm, qc));
    }
    Some(quot)
}

// ---------------------------------------------------------------------------
// Jet spaces

/// The finite-dimensional space J^(k) of k-jets in the given variables.
#[derive(Clone, Debug)]
pub struct JetSpace {
    pub vars: Vec<String>,
    pub degree: u32,
}

impl JetSpace {
    pub fn new(vars: &[&str], degree: u32) -> Self {
        JetSpace {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            degree,
        }
    }

    /// dim_K J^(k) = C(n + k, n).
    pub fn dim(&self) -> u64 {
        binomial(self.vars.len() as u64 + self.degree as u64, self.vars.len() as u64)
    }

    /// All monomials of total degree ≤ k in canonical (deglex) order.
    pub fn monomials(&self) -> Vec<Mono> {
        let mut out = vec![];
        let n = self.vars.len();
        let mut current = vec![0u32; n];
        collect_monomials(&mut current, 0, self.degree, n, &mut out);
        out.sort();
        out
    }
}

fn collect_monomials(current: &mut Vec<u32>, pos: usize, budget: u32, n: usize, out: &mut Vec<Mono>) {
    if pos == n {
        out.push(Mono(current.clone()));
        return;
    }
    for e in 0..=budget {
        current[pos] = e;
        collect_monomials(current, pos + 1, budget - e, n, out);
    }
    current[pos] = 0;
}

pub fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k.min(n));
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

// ---------------------------------------------------------------------------
// Resultants

/// Resultant of two polynomials in an eliminated variable z, given by their
/// coefficient vectors (ascending powers of z) with Series coefficients.
/// Computed as the Sylvester determinant by fraction-free Bareiss
/// elimination with exact series division.
pub fn resultant(p: &[Series], q: &[Series], cap: Prec) -> Result<Series> {
    let trim = |v: &[Series]| -> Vec<Series> {
        let mut v: Vec<Series> = v.to_vec();
        while v.last().is_some_and(|s| s.is_zero()) {
            v.pop();
        }
        v
    };
    let p = trim(p);
    let q = trim(q);
    if p.is_empty() || q.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let n = p.len() - 1; // deg p
    let m = q.len() - 1; // deg q
    if n == 0 && m == 0 {
        let vars: Vec<&str> = p[0].vars().iter().map(|s| s.as_str()).collect();
        return Ok(Series::one(&vars, p[0].field(), p[0].prec().min(q[0].prec())));
    }
    if n == 0 {
        return Ok(p[0].pow(m as u32));
    }
    if m == 0 {
        return Ok(q[0].pow(n as u32));
    }
    let size = n + m;
    let zero = p[0].zero_like().with_prec(q[0].prec());
    let mut mat = vec![vec![zero.clone(); size]; size];
    for row in 0..m {
        for (j, c) in p.iter().enumerate() {
            // descending coefficients: column row + (n - j)
            mat[row][row + n - j] = c.clone().with_prec(zero.prec());
        }
    }
    for row in 0..n {
        for (j, c) in q.iter().enumerate() {
            mat[m + row][row + m - j] = c.clone().with_prec(zero.prec());
        }
    }
    bareiss_det(mat, cap)
}

/// Fraction-free determinant over the series ring.
pub(crate) fn bareiss_det(mut mat: Vec<Vec<Series>>, cap: Prec) -> Result<Series> {
    let n = mat.len();
    if n == 0 {
        panic!("empty matrix");
    }
    let mut sign = false;
    let mut prev: Option<Series> = None;
    for k in 0..n - 1 {
        // pivot: entries zero to precision are treated as zero
        let Some(r) = (k..n).find(|&r| !mat[r][k].is_zero()) else {
            let mut z = mat[0][0].zero_like();
            z.prec = z.prec.min(cap);
            return Ok(z);
        };
        if r != k {
            mat.swap(r, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = mat[k][k].mul(&mat[i][j]);
                let b = mat[i][k].mul(&mat[k][j]);
                let num = a.sub(&b);
                mat[i][j] = match &prev {
                    None => num,
                    Some(d) => num.exact_div(d, cap)?,
                };
            }
        }
        for i in k + 1..n {
            mat[i][k] = mat[i][k].zero_like();
        }
        prev = Some(mat[k][k].clone());
    }
    let det = mat[n - 1][n - 1].clone();
    Ok(if sign { det.neg() } else { det })
}

// ---------------------------------------------------------------------------
// Parsing and printing

impl fmt::Display for Series {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        let f = &self.field;
        let mut first = true;
        for (m, c) in &self.terms {
            let cs = f.display(c);
            let (neg, cs) = match cs.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, cs),
            };
            if first {
                if neg {
                    write!(out, "-")?;
                }
                first = false;
            } else if neg {
                write!(out, "-")?;
            } else {
                write!(out, "+")?;
            }
            let mono = mono_string(m, &self.vars);
            let coeff_is_one = cs == "1";
            match (coeff_is_one, mono.is_empty()) {
                (true, true) => write!(out, "1")?,
                (true, false) => write!(out, "{mono}")?,
                (false, true) => {
                    if f.needs_parens(c) {
                        write!(out, "({cs})")?;
                    } else {
                        write!(out, "{cs}")?;
                    }
                }
                (false, false) => {
                    if f.needs_parens(c) {
                        write!(out, "({cs})*{mono}")?;
                    } else {
                        write!(out, "{cs}*{mono}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn mono_string(m: &Mono, vars: &[String]) -> String {
    let mut parts = vec![];
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            _ => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    parts.join("*")
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (prec {:?})", self, self.prec)
    }
}

/// Parse the series text grammar: sums of terms `c*x^a*y^b` with integer,
/// fractional or (parenthesized) extension-generator coefficients; `*` and
/// `^1` are optional.  The result is exact (a polynomial).
pub fn parse(text: &str, vars: &[&str], field: &FieldCtx) -> Result<Series> {
    let mut s = Series::zero(vars, field, Prec::Exact);
    let gen_name = field.generator_name().map(|s| s.to_string());
    let toks = tokenize(text)?;
    let mut pos = 0usize;
    let mut sign = 1i64;
    if toks.is_empty() {
        return Err(Error::InvalidInput("empty series text".into()));
    }
    while pos < toks.len() {
        // consume leading signs
        loop {
            match toks.get(pos) {
                Some(Tok::Plus) => pos += 1,
                Some(Tok::Minus) => {
                    sign = -sign;
                    pos += 1;
                }
                _ => break,
            }
        }
        if pos >= toks.len() {
            return Err(Error::InvalidInput("dangling sign".into()));
        }
        // one term: product of factors
        let mut coeff = field.from_i64(sign);
        sign = 1;
        let mut exps = vec![0u32; vars.len()];
        let mut any_factor = false;
        loop {
            match toks.get(pos) {
                Some(Tok::Int(n)) => {
                    pos += 1;
                    let mut c = field.from_i64(*n);
                    if let Some(Tok::Slash) = toks.get(pos) {
                        pos += 1;
                        match toks.get(pos) {
                            Some(Tok::Int(d)) => {
                                pos += 1;
                                let dd = field.from_i64(*d);
                                c = field.div(&c, &dd).map_err(|_| {
                                    Error::InvalidInput(format!("bad denominator {d}"))
                                })?;
                            }
                            _ => return Err(Error::InvalidInput("expected denominator".into())),
                        }
                    }
                    if let Some(Tok::Caret) = toks.get(pos) {
                        pos += 1;
                        match toks.get(pos) {
                            Some(Tok::Int(e)) if *e >= 0 => {
                                pos += 1;
                                c = field.pow(&c, *e as u64);
                            }
                            _ => return Err(Error::InvalidInput("expected exponent".into())),
                        }
                    }
                    coeff = field.mul(&coeff, &c);
                    any_factor = true;
                }
                Some(Tok::LParen) => {
                    // parenthesized coefficient in the extension generator
                    let close = find_close(&toks, pos)?;
                    let inner: String = toks[pos + 1..close].iter().map(tok_text).collect();
                    let c = field.parse_elem(&inner)?;
                    pos = close + 1;
                    coeff = field.mul(&coeff, &c);
                    any_factor = true;
                }
                Some(Tok::Ident(name)) => {
                    pos += 1;
                    let mut e = 1u32;
                    if let Some(Tok::Caret) = toks.get(pos) {
                        pos += 1;
                        match toks.get(pos) {
                            Some(Tok::Int(v)) if *v >= 0 => {
                                pos += 1;
                                e = *v as u32;
                            }
                            _ => return Err(Error::InvalidInput("expected exponent".into())),
                        }
                    }
                    if Some(name) == gen_name.as_ref() {
                        let g = field
                            .generator()
                            .expect("generator name implies extension field");
                        coeff = field.mul(&coeff, &field.pow(&g, e as u64));
                    } else {
                        let idx = vars.iter().position(|v| v == name).ok_or_else(|| {
                            Error::InvalidInput(format!("unknown variable `{name}`"))
                        })?;
                        exps[idx] += e;
                    }
                    any_factor = true;
                }
                Some(Tok::Star) => {
                    pos += 1;
                    continue;
                }
                _ => break,
            }
        }
        if !any_factor {
            return Err(Error::InvalidInput(format!(
                "unexpected token at position {pos}"
            )));
        }
        s.add_term(Mono(exps), &coeff);
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Int(n) => n.to_string(),
        Tok::Ident(s) => s.clone(),
        Tok::Plus => "+".into(),
        Tok::Minus => "-".into(),
        Tok::Star => "*".into(),
        Tok::Caret => "^".into(),
        Tok::Slash => "/".into(),
        Tok::LParen => "(".into(),
        Tok::RParen => ")".into(),
    }
}

fn find_close(toks: &[Tok], open: usize) -> Result<usize> {
    let mut depth = 0;
    for (i, t) in toks.iter().enumerate().skip(open) {
        match t {
            Tok::LParen => depth += 1,
            Tok::RParen => {
                depth -= 1;
                if depth == 0 {
                    return Ok(i);
                }
            }
            _ => {}
        }
    }
    Err(Error::InvalidInput("unbalanced parentheses".into()))
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let mut out = vec![];
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                chars.next();
                out.push(Tok::Star);
            }
            '^' => {
                chars.next();
                out.push(Tok::Caret);
            }
            '/' => {
                chars.next();
                out.push(Tok::Slash);
            }
            '(' => {
                chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                chars.next();
                out.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut n = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        n.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(n.parse().map_err(|_| {
                    Error::InvalidInput(format!("integer overflow in `{n}`"))
                })?));
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(s));
            }
            other => {
                return Err(Error::InvalidInput(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn f3() -> FieldCtx {
        FieldCtx::prime(3).unwrap()
    }

    #[test]
    fn parse_and_ord() {
        let f = parse("x^3+y^4", &["x", "y"], &q()).unwrap();
        assert_eq!(f.ord(), SeriesOrd::Finite(3));
        let z = Series::zero(&["x", "y"], &q(), Prec::Finite(10));
        assert_eq!(
            z.ord(),
            SeriesOrd::Infinite {
                precision_limited: true
            }
        );
        let t = parse("t^2+t^7", &["t"], &q()).unwrap();
        assert_eq!(t.ord(), SeriesOrd::Finite(2));
    }

    #[test]
    fn derivative_char3() {
        let f = parse("x^3+y^4", &["x", "y"], &f3()).unwrap();
        assert!(f.derivative("x").is_zero());
        let dy = f.derivative("y");
        let expect = parse("y^3", &["x", "y"], &f3()).unwrap();
        assert!(dy.eq_to_prec(&expect, 100));
    }

    #[test]
    fn truncated_product() {
        let f = parse("1+t", &["t"], &q()).unwrap().with_prec(Prec::Finite(5));
        let g = parse("1-t", &["t"], &q()).unwrap().with_prec(Prec::Finite(5));
        let prod = f.mul(&g);
        let expect = parse("1-t^2", &["t"], &q()).unwrap();
        assert!(prod.eq_to_prec(&expect, 5));
    }

    #[test]
    fn compose_parabola_and_shift() {
        let f = parse("y-x^2", &["x", "y"], &q()).unwrap();
        let t = parse("t", &["t"], &q()).unwrap();
        let t2 = parse("t^2", &["t"], &q()).unwrap();
        assert!(f.compose(&[t.clone(), t2]).unwrap().is_zero());

        let g = parse("x^2+y^3", &["x", "y"], &q()).unwrap();
        let xy = parse("x+y", &["x", "y"], &q()).unwrap();
        let y = parse("y", &["x", "y"], &q()).unwrap();
        let composed = g.compose(&[xy, y]).unwrap();
        let expect = parse("x^2+2*x*y+y^2+y^3", &["x", "y"], &q()).unwrap();
        assert_eq!(composed, expect);

        let id = parse("x+x^2", &["x"], &q()).unwrap();
        let x = parse("x", &["x"], &q()).unwrap();
        assert_eq!(x.compose(&[id.clone()]).unwrap(), id);
    }

    #[test]
    fn compose_rejects_order_zero() {
        let f = parse("x", &["x"], &q()).unwrap();
        let one = parse("1+x", &["x"], &q()).unwrap();
        assert!(matches!(f.compose(&[one]), Err(Error::OrderZeroArgument)));
    }

    #[test]
    fn invert_series_examples() {
        let t = parse("t", &["t"], &q()).unwrap().with_prec(Prec::Finite(8));
        let inv = t.invert_series().unwrap();
        assert!(inv.eq_to_prec(&parse("t", &["t"], &q()).unwrap(), 8));

        let u = parse("t+t^2", &["t"], &q()).unwrap().with_prec(Prec::Finite(5));
        let v = u.invert_series().unwrap();
        let expect = parse("t-t^2+2*t^3-5*t^4", &["t"], &q()).unwrap();
        assert!(v.eq_to_prec(&expect, 5));
        let round = u.compose(&[v]).unwrap();
        assert!(round.eq_to_prec(&parse("t", &["t"], &q()).unwrap(), 5));

        let f5 = FieldCtx::prime(5).unwrap();
        let u = parse("2*t", &["t"], &f5).unwrap().with_prec(Prec::Finite(6));
        let v = u.invert_series().unwrap();
        assert!(v.eq_to_prec(&parse("3*t", &["t"], &f5).unwrap(), 6));
    }

    #[test]
    fn invert_round_trip_random() {
        // 50 random order-one series over F_5 and Q
        let f5 = FieldCtx::prime(5).unwrap();
        for seed in 0..25u64 {
            for field in [&f5, &q()] {
                let mut u = Series::zero(&["t"], field, Prec::Finite(10));
                let lead = 1 + (seed % 4) as i64;
                u.add_term(Mono(vec![1]), &field.from_i64(lead));
                for k in 2..8 {
                    let c = ((seed * 31 + k as u64 * 17) % 5) as i64 - 2;
                    u.add_term(Mono(vec![k]), &field.from_i64(c));
                }
                let v = u.invert_series().unwrap();
                let round = u.compose(&[v]).unwrap();
                assert!(
                    round.eq_to_prec(&parse("t", &["t"], field).unwrap(), 10),
                    "seed {seed}"
                );
            }
        }
    }

    #[test]
    fn jet_truncation() {
        let f = parse("x^3+y^4", &["x", "y"], &q()).unwrap();
        let j = f.jet(3).unwrap();
        assert_eq!(j, parse("x^3", &["x", "y"], &q()).unwrap());
        assert_eq!(j.jet(3).unwrap(), j, "idempotent");
        let t5 = parse("t^5", &["t"], &q()).unwrap();
        assert!(t5.jet(4).unwrap().is_zero());
        let trunc = f.with_prec(Prec::Finite(4));
        assert!(matches!(trunc.jet(4), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn jet_mul_compatibility() {
        let f = parse("1+x+y^2+x^3", &["x", "y"], &q()).unwrap();
        let g = parse("2-x*y+y^3", &["x", "y"], &q()).unwrap();
        for k in 0..5 {
            let lhs = f.mul(&g).jet(k).unwrap();
            let rhs = f.jet(k).unwrap().mul(&g.jet(k).unwrap()).jet(k).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn leibniz_rule() {
        let f = parse("x^2+x*y", &["x", "y"], &q()).unwrap().with_prec(Prec::Finite(9));
        let g = parse("y^3+x", &["x", "y"], &q()).unwrap().with_prec(Prec::Finite(9));
        let lhs = f.mul(&g).derivative("x");
        let rhs = f.derivative("x").mul(&g).add(&f.mul(&g.derivative("x")));
        assert!(lhs.eq_to_prec(&rhs, 8));
    }

    #[test]
    fn derivative_of_pth_power_vanishes() {
        let f3 = f3();
        for seed in 0..10u64 {
            let mut f = Series::zero(&["x", "y"], &f3, Prec::Finite(12));
            for (i, j) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
                let c = ((seed * 7 + (i * 3 + j) as u64) % 3) as i64;
                f.add_term(Mono(vec![i, j]), &f3.from_i64(c));
            }
            let cube = f.pow(3);
            assert!(cube.derivative("x").is_zero());
            assert!(cube.derivative("y").is_zero());
        }
    }

    #[test]
    fn exact_division() {
        let num = parse("x^2-y^2", &["x", "y"], &q()).unwrap();
        let den = parse("x-y", &["x", "y"], &q()).unwrap();
        let quot = num.exact_div(&den, Prec::Exact).unwrap();
        assert_eq!(quot, parse("x+y", &["x", "y"], &q()).unwrap());

        // non-polynomial quotient with a finite cap
        let one = parse("1", &["t"], &q()).unwrap();
        let den = parse("1+t", &["t"], &q()).unwrap();
        let quot = one.exact_div(&den, Prec::Finite(4)).unwrap();
        assert!(quot.eq_to_prec(&parse("1-t+t^2-t^3", &["t"], &q()).unwrap(), 4));
    }

    #[test]
    fn resultant_examples() {
        let vars = ["x", "y"];
        let x = parse("x", &vars, &q()).unwrap();
        let y = parse("y", &vars, &q()).unwrap();
        let one = parse("1", &vars, &q()).unwrap();
        let zero = Series::zero(&vars, &q(), Prec::Exact);

        // Res_z(x - z, y - z^2) = y - x^2 up to sign
        let p = [x.clone(), one.neg()];
        let qq = [y.clone(), zero.clone(), one.neg()];
        let r = resultant(&p, &qq, Prec::Exact).unwrap();
        let expect = parse("y-x^2", &vars, &q()).unwrap();
        assert!(r == expect || r == expect.neg(), "got {r}");

        // Res_z(x - z^2, y - z^3) = y^2 - x^3 up to sign
        let p = [x.clone(), zero.clone(), one.neg()];
        let qq = [y.clone(), zero.clone(), zero.clone(), one.neg()];
        let r = resultant(&p, &qq, Prec::Exact).unwrap();
        let expect = parse("y^2-x^3", &vars, &q()).unwrap();
        assert!(r == expect || r == expect.neg(), "got {r}");
        // oracle: vanishes on the parametrization
        let t2 = parse("t^2", &["t"], &q()).unwrap();
        let t3 = parse("t^3", &["t"], &q()).unwrap();
        assert!(r.compose(&[t2, t3]).unwrap().is_zero());

        // Res_z(x - z, x - z) = 0
        let p1 = [x.clone(), one.neg()];
        let p2 = [x.clone(), one.neg()];
        let r = resultant(&p1, &p2, Prec::Exact).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn jet_space_dimension() {
        let js = JetSpace::new(&["x", "y"], 5);
        assert_eq!(js.dim(), 21);
        assert_eq!(js.monomials().len(), 21);
        let js3 = JetSpace::new(&["x", "y", "z"], 2);
        assert_eq!(js3.dim(), 10);
    }

    #[test]
    fn display_round_trip() {
        let cases = ["x^3+y^4", "2*x*y^3", "t^2", "1-t^2", "x^2+2*x*y+y^2+y^3"];
        for c in cases {
            let vars: Vec<&str> = if c.contains('t') { vec!["t"] } else { vec!["x", "y"] };
            let s = parse(c, &vars, &q()).unwrap();
            let printed = s.to_string();
            let again = parse(&printed, &vars, &q()).unwrap();
            assert_eq!(s, again, "{c} -> {printed}");
        }
        // extension coefficients round trip with parentheses
        let f4 = FieldCtx::parse_spec("char=2; ext=a:a^2+a+1").unwrap();
        let s = parse("(a+1)*x^2+a*y+1", &["x", "y"], &f4).unwrap();
        let printed = s.to_string();
        let again = parse(&printed, &["x", "y"], &f4).unwrap();
        assert_eq!(s, again, "printed as {printed}");
    }

    #[test]
    fn substitute_values_exact_only() {
        let f5 = FieldCtx::prime(5).unwrap();
        let f = parse("z^2+t*z^3", &["z", "t"], &f5).unwrap();
        let s = f.substitute_values(&[("t", f5.from_i64(2))]).unwrap();
        assert_eq!(s, parse("z^2+2*z^3", &["z"], &f5).unwrap());
        let trunc = f.with_prec(Prec::Finite(6));
        assert!(trunc.substitute_values(&[("t", f5.one())]).is_err());
    }
}
