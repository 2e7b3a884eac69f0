//! Branch parametrizations and the Hamburger-Noether expansion: the
//! characteristic-free substitute for the Puiseux expansion, computed by a
//! chain of successive divisions by series of lower order, together with
//! back-substitution and the complex (rational) model.

use num::rational::BigRational;
use num::Zero;

use crate::coeff::{FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::series::{Prec, Series, SeriesOrd, DEFAULT_PRECISION};

/// A branch given by a pair (x(t), y(t)) of univariate series over a common
/// field; at most one of the two may be zero (axis branches).
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization {
    pub x: Series,
    pub y: Series,
}

/// Primitivity of a parametrization: does it factor through t ↦ t^d, d > 1?
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Primitivity {
    Primitive,
    /// Factors through t ↦ t^gcd.
    Imprimitive { gcd: u32 },
    /// The visible support has gcd > 1 but unknown higher terms could still
    /// make the parametrization primitive.
    PrecisionLimited { gcd: u32 },
}

impl Primitivity {
    pub fn is_primitive(self) -> bool {
        matches!(self, Primitivity::Primitive)
    }
}

impl Parametrization {
    pub fn new(x: Series, y: Series) -> Result<Self> {
        if x.nvars() != 1 || y.nvars() != 1 {
            return Err(Error::InvalidInput("parametrization needs univariate series".into()));
        }
        if x.vars() != y.vars() {
            return Err(Error::VariableMismatch(x.vars().join(","), y.vars().join(",")));
        }
        if !x.field().same_field(y.field()) {
            return Err(Error::FieldMismatch);
        }
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidInput("both series are zero".into()));
        }
        for (name, s) in [("x", &x), ("y", &y)] {
            if let SeriesOrd::Finite(0) = s.ord() {
                return Err(Error::InvalidInput(format!(
                    "{name}(t) has a constant term; branches pass through the origin"
                )));
            }
        }
        Ok(Parametrization { x, y })
    }

    /// Convenience: parse both coordinates in the uniformizer `var`.
    pub fn parse(x: &str, y: &str, var: &str, field: &FieldCtx) -> Result<Self> {
        let xs = crate::series::parse(x, &[var], field)?;
        let ys = crate::series::parse(y, &[var], field)?;
        Parametrization::new(xs, ys)
    }

    pub fn field(&self) -> &FieldCtx {
        self.x.field()
    }

    pub fn uniformizer(&self) -> &str {
        &self.x.vars()[0]
    }

    /// Multiplicity of the branch: min of the coordinate orders.
    pub fn mult(&self) -> Result<u32> {
        let ox = self.x.ord();
        let oy = self.y.ord();
        match (ox.finite(), oy.finite()) {
            (Some(a), Some(b)) => Ok(a.min(b)),
            (Some(a), None) => Ok(a),
            (None, Some(b)) => Ok(b),
            (None, None) => Err(Error::PrecisionExhausted(
                "both coordinates vanish to precision".into(),
            )),
        }
    }

    /// gcd of every exponent in the support of x and y, with a
    /// precision-limited flag when the support cannot settle the question.
    pub fn is_primitive(&self) -> Primitivity {
        let mut g = 0u32;
        for s in [&self.x, &self.y] {
            for (m, _) in s.terms() {
                g = gcd(g, m.0[0]);
            }
        }
        if g == 1 {
            return Primitivity::Primitive;
        }
        let exact = matches!(self.x.prec(), Prec::Exact) && matches!(self.y.prec(), Prec::Exact);
        if exact {
            Primitivity::Imprimitive { gcd: g }
        } else {
            Primitivity::PrecisionLimited { gcd: g }
        }
    }

    /// Working precision for division chains on this branch.
    pub fn working_precision(&self) -> u32 {
        self.x
            .prec()
            .min(self.y.prec())
            .finite()
            .unwrap_or(DEFAULT_PRECISION)
    }

    /// Map both coordinates through a field embedding.
    pub fn map_field(&self, emb: &crate::coeff::FieldEmbedding) -> Result<Parametrization> {
        let x = self.x.map_coeffs(&emb.target, &mut |c| Ok(emb.map(c)))?;
        let y = self.y.map_coeffs(&emb.target, &mut |c| Ok(emb.map(c)))?;
        Parametrization::new(x, y)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// One non-final row of a Hamburger-Noether expansion.  Row 0 stores the
/// coefficients a_{0,1}..a_{0,h}; deeper rows store a_{i,2}..a_{i,h_i}
/// (the linear coefficient is identically zero there).  Zero coefficients
/// are kept explicitly so the row shape h_i is unambiguous.
#[derive(Clone, Debug, PartialEq)]
pub struct HnRow {
    pub h: u32,
    pub coeffs: Vec<FieldElem>,
}

impl HnRow {
    /// Exponent of the first stored coefficient for row `index`.
    pub fn first_exponent(index: usize) -> u32 {
        if index == 0 {
            1
        } else {
            2
        }
    }
}

/// The Hamburger-Noether expansion of a branch: the division-chain rows and
/// the final row, a series expressing the last dividend in the canonical
/// uniformizer z_r.
#[derive(Clone, Debug)]
pub struct HNExpansion {
    pub rows: Vec<HnRow>,
    /// The final row z_{r-1} = a_{r,2} z_r^2 + ... as a univariate series in
    /// the uniformizer (for a smooth branch this is the whole expansion
    /// y ∈ K[[x]] and may have a linear term).
    pub final_series: Series,
    /// Whether x and y were swapped so that ord(x) ≤ ord(y).
    pub swapped: bool,
}

impl HNExpansion {
    pub fn field(&self) -> &FieldCtx {
        self.final_series.field()
    }

    /// Row shapes (h_0, ..., h_{r-1}) of the non-final rows.
    pub fn shape(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.h).collect()
    }

    /// Structural equality of rows and of the final series to the common
    /// precision.
    pub fn same_rows(&self, other: &HNExpansion) -> bool {
        if self.swapped != other.swapped || self.rows != other.rows {
            return false;
        }
        let upto = self
            .final_series
            .prec()
            .min(other.final_series.prec())
            .finite()
            .unwrap_or(u32::MAX);
        self.final_series.eq_to_prec(&other.final_series, upto)
    }
}

/// Compute the Hamburger-Noether expansion of a primitive branch by the
/// successive-division chain.  When ord(x) > ord(y) the coordinates are
/// swapped first and the swap recorded.
pub fn hn_expand(p: &Parametrization) -> Result<HNExpansion> {
    match p.is_primitive() {
        Primitivity::Primitive => {}
        Primitivity::Imprimitive { gcd } => return Err(Error::NonPrimitive(gcd)),
        Primitivity::PrecisionLimited { .. } => {
            return Err(Error::PrecisionExhausted(
                "primitivity undecided at this precision; re-run with more terms".into(),
            ))
        }
    }
    let ord_of = |s: &Series| s.ord().finite();
    let (ox, oy) = (ord_of(&p.x), ord_of(&p.y));
    let (mut u, mut v, swapped) = match (ox, oy) {
        (Some(a), Some(b)) if a <= b => (p.x.clone(), p.y.clone(), false),
        (Some(_), Some(_)) => (p.y.clone(), p.x.clone(), true),
        // an axis branch: the nonzero coordinate is the divisor
        (Some(_), None) => (p.x.clone(), p.y.clone(), false),
        (None, Some(_)) => (p.y.clone(), p.x.clone(), true),
        (None, None) => unreachable!("checked at construction"),
    };
    let working = p.working_precision();
    let mut rows: Vec<HnRow> = vec![];
    loop {
        let n = match u.ord() {
            SeriesOrd::Finite(n) => n,
            SeriesOrd::Infinite { .. } => {
                return Err(Error::PrecisionExhausted("divisor vanishes to precision".into()))
            }
        };
        if n == 1 {
            // final row: expand the dividend as a series in the divisor
            let sigma = u.invert_series()?;
            let final_series = v.compose(&[sigma])?;
            return Ok(HNExpansion {
                rows,
                final_series,
                swapped,
            });
        }
        // division loop for this row; coefficients are stored from index
        // `first` (deeper rows have no linear coefficient: the dividend has
        // strictly larger order than the divisor)
        let row_index = rows.len();
        let first = HnRow::first_exponent(row_index);
        let lc_u = u.coeff_at(n);
        let mut r = v.clone();
        let mut coeffs: Vec<FieldElem> = vec![];
        let field = u.field().clone();
        let remainder_order = |r: &Series| -> Result<u32> {
            match r.ord() {
                SeriesOrd::Finite(e) => Ok(e),
                // remainder exactly zero with ord(u) > 1: the branch factors
                // through u, contradicting primitivity
                SeriesOrd::Infinite { precision_limited: false } => Err(Error::NonPrimitive(n)),
                SeriesOrd::Infinite { precision_limited: true } => Err(Error::PrecisionExhausted(
                    "remainder vanishes to precision before the chain terminates".into(),
                )),
            }
        };
        let mut j = 1u32;
        let (h, z) = loop {
            let e = remainder_order(&r)?;
            debug_assert!(e >= j * n, "division chain invariant violated");
            if e == j * n {
                debug_assert!(j >= first, "linear coefficient in a deep row");
                let c = field.div(&r.coeff_at(e), &field.pow(&lc_u, j as u64))?;
                r = r.sub(&u.pow(j).scale(&c));
                coeffs.push(c);
            } else if j >= first {
                coeffs.push(field.zero());
            }
            let e = remainder_order(&r)?;
            if e > j * n && e < (j + 1) * n {
                // stop: 0 < ord(z) < n with z = r / u^j; the cap compensates
                // the order consumed by the division so exact inputs keep
                // the working precision all the way down the chain
                let cap = Prec::Finite(working + j * n);
                let z = r.exact_div(&u.pow(j), cap)?;
                break (j, z);
            }
            j += 1;
        };
        rows.push(HnRow { h, coeffs });
        // recurse on (z, u): strictly smaller divisor order forces termination
        v = u;
        u = z;
    }
}

/// Back-substitute an expansion into a parametrization in the canonical
/// uniformizer, to the requested precision.
pub fn hn_to_param(h: &HNExpansion, precision: u32) -> Result<Parametrization> {
    let field = h.final_series.field().clone();
    let var = h.final_series.vars()[0].clone();
    let prec = Prec::Finite(precision);
    let t = Series::var(&[var.as_str()], &field, &var, prec);
    // deepest pair: divisor = uniformizer, dividend = final series
    let mut divisor = t;
    let mut dividend = h.final_series.with_prec(prec);
    for (index, row) in h.rows.iter().enumerate().rev() {
        // row: value = sum a_j d^j + d^h * z, where d is this row's divisor
        // (the dividend of the deeper pair) and z the deeper divisor.
        let (new_divisor, z) = (dividend, divisor);
        let first = HnRow::first_exponent(index);
        let mut value = new_divisor.pow(row.h).mul(&z);
        for (offset, c) in row.coeffs.iter().enumerate() {
            let j = first + offset as u32;
            value = value.add(&new_divisor.pow(j).scale(c));
        }
        dividend = value;
        divisor = new_divisor;
    }
    let (x, y) = if h.swapped {
        (dividend, divisor)
    } else {
        (divisor, dividend)
    };
    Parametrization::new(x, y)
}

/// Default value map for complex models: 0 ↦ 0, everything else ↦ 1.
pub fn default_value_map(field: &FieldCtx) -> impl Fn(&FieldElem) -> BigRational + '_ {
    move |a| {
        if field.is_zero(a) {
            BigRational::zero()
        } else {
            BigRational::from_integer(1.into())
        }
    }
}

/// Replace every coefficient of the expansion through a zero-preserving
/// value map into ℚ, yielding the complex (here: rational) model with the
/// same row shapes.  By Campillo's theorem its characteristic exponents
/// agree with those of the source and do not depend on the map.
pub fn complex_model(
    h: &HNExpansion,
    value_map: &dyn Fn(&FieldElem) -> BigRational,
) -> Result<HNExpansion> {
    let rat = FieldCtx::rationals();
    let src = h.field().clone();
    let mut map_elem = |a: &FieldElem| -> Result<FieldElem> {
        let img = value_map(a);
        let is_zero_src = src.is_zero(a);
        if img.is_zero() != is_zero_src {
            return Err(Error::ValueMapViolation(src.display(a)));
        }
        rat.from_rational(img)
    };
    let rows = h
        .rows
        .iter()
        .map(|r| {
            let coeffs = r.coeffs.iter().map(&mut map_elem).collect::<Result<Vec<_>>>()?;
            Ok(HnRow { h: r.h, coeffs })
        })
        .collect::<Result<Vec<_>>>()?;
    let final_series = h.final_series.map_coeffs(&rat, &mut map_elem)?;
    Ok(HNExpansion {
        rows,
        final_series,
        swapped: h.swapped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::parse;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn branch(x: &str, y: &str, field: &FieldCtx) -> Parametrization {
        Parametrization::parse(x, y, "t", field).unwrap()
    }

    #[test]
    fn primitivity() {
        assert!(branch("t^2", "t^3", &q()).is_primitive().is_primitive());
        assert_eq!(
            branch("t^2", "t^4", &q()).is_primitive(),
            Primitivity::Imprimitive { gcd: 2 }
        );
        assert!(branch("t^4", "t^6+t^7", &q()).is_primitive().is_primitive());
        // truncated series cannot certify imprimitivity
        let p = Parametrization::new(
            parse("t^2", &["t"], &q()).unwrap().with_prec(Prec::Finite(8)),
            parse("t^4", &["t"], &q()).unwrap().with_prec(Prec::Finite(8)),
        )
        .unwrap();
        assert_eq!(p.is_primitive(), Primitivity::PrecisionLimited { gcd: 2 });
    }

    #[test]
    fn cusp_expansion() {
        // (t^2, t^3): row 0 is y = x z_1 (h=1, a_{01}=0), final row x = z_1^2
        let h = hn_expand(&branch("t^2", "t^3", &q())).unwrap();
        assert_eq!(h.shape(), vec![1]);
        assert_eq!(h.rows[0].coeffs, vec![q().zero()]);
        assert!(!h.swapped);
        let expect = parse("t^2", &["t"], &q()).unwrap();
        let upto = h.final_series.prec().finite().unwrap();
        assert!(h.final_series.eq_to_prec(&expect, upto));
    }

    #[test]
    fn smooth_branch_is_single_final_row() {
        let h = hn_expand(&branch("t", "t^2", &q())).unwrap();
        assert!(h.rows.is_empty());
        let expect = parse("t^2", &["t"], &q()).unwrap();
        let upto = h.final_series.prec().finite().unwrap();
        assert!(h.final_series.eq_to_prec(&expect, upto));
    }

    #[test]
    fn deeper_tangency_row() {
        // (t^2, t^6 + t^7): row 0 has h = 3 with a_{03} = 1, final row x = z_1^2
        let h = hn_expand(&branch("t^2", "t^6+t^7", &q())).unwrap();
        assert_eq!(h.shape(), vec![3]);
        assert_eq!(h.rows[0].coeffs, vec![q().zero(), q().zero(), q().one()]);
        let expect = parse("t^2", &["t"], &q()).unwrap();
        let upto = h.final_series.prec().finite().unwrap();
        assert!(h.final_series.eq_to_prec(&expect, upto));
    }

    #[test]
    fn back_substitution_reproduces_cusp() {
        let h = hn_expand(&branch("t^2", "t^3", &q())).unwrap();
        let p = hn_to_param(&h, 12).unwrap();
        assert!(p.x.eq_to_prec(&parse("t^2", &["t"], &q()).unwrap(), 12));
        assert!(p.y.eq_to_prec(&parse("t^3", &["t"], &q()).unwrap(), 12));
    }

    #[test]
    fn non_primitive_rejected() {
        assert!(matches!(
            hn_expand(&branch("t^2", "t^4", &q())),
            Err(Error::NonPrimitive(2))
        ));
    }

    #[test]
    fn swap_recorded_when_y_is_steeper() {
        let h = hn_expand(&branch("t^3", "t^2", &q())).unwrap();
        assert!(h.swapped);
        let p = hn_to_param(&h, 10).unwrap();
        assert!(p.x.eq_to_prec(&parse("t^3", &["t"], &q()).unwrap(), 10));
        assert!(p.y.eq_to_prec(&parse("t^2", &["t"], &q()).unwrap(), 10));
    }

    #[test]
    fn round_trip_on_random_hn_data() {
        // random HN data over F_5: rebuild a parametrization, re-expand, and
        // compare row data; 50 shapes
        let f5 = FieldCtx::prime(5).unwrap();
        let mut count = 0;
        for seed in 0..50u64 {
            let h0 = {
                let mix = |k: u64| (seed.wrapping_mul(1103515245).wrapping_add(k * 12345)) % 5;
                let h_row = 1 + (mix(1) % 3) as u32; // h_0 in 1..=3
                let coeffs: Vec<FieldElem> = (1..=h_row)
                    .map(|j| f5.from_i64(mix(10 + j as u64) as i64))
                    .collect();
                // final series: order >= 2 with a couple of terms
                let c2 = 1 + mix(20) % 4;
                let c3 = mix(21);
                let text = format!("{c2}*t^2+{c3}*t^3+t^5");
                HNExpansion {
                    rows: vec![HnRow { h: h_row, coeffs }],
                    final_series: parse(&text, &["t"], &f5).unwrap(),
                    swapped: false,
                }
            };
            let p = hn_to_param(&h0, 24).unwrap();
            if !p.is_primitive().is_primitive() {
                continue;
            }
            let h1 = hn_expand(&p).unwrap();
            assert_eq!(h0.shape(), h1.shape(), "seed {seed}");
            for (r0, r1) in h0.rows.iter().zip(&h1.rows) {
                assert_eq!(r0.coeffs, r1.coeffs, "seed {seed}");
            }
            let upto = h1.final_series.prec().finite().unwrap().min(18);
            assert!(
                h0.final_series.eq_to_prec(&h1.final_series, upto),
                "seed {seed}: {} vs {}",
                h0.final_series,
                h1.final_series
            );
            count += 1;
        }
        assert!(count >= 40, "too many degenerate samples: {count}");
    }

    #[test]
    fn two_pair_branch_round_trips() {
        // (t^4, t^6 + t^7) has two Puiseux pairs; back-substitution returns
        // the branch in the canonical uniformizer, so the round trip is on
        // the row data, not on the original parametrization
        let p = branch("t^4", "t^6+t^7", &q());
        let h = hn_expand(&p).unwrap();
        assert_eq!(h.shape(), vec![1, 2]);
        let p2 = hn_to_param(&h, 20).unwrap();
        let h2 = hn_expand(&p2).unwrap();
        assert_eq!(h.shape(), h2.shape());
        for (r0, r1) in h.rows.iter().zip(&h2.rows) {
            assert_eq!(r0.coeffs, r1.coeffs);
        }
    }

    #[test]
    fn complex_model_keeps_shape() {
        let f2 = FieldCtx::prime(2).unwrap();
        let h = hn_expand(&branch("t^2", "t^3", &f2)).unwrap();
        let model = complex_model(&h, &default_value_map(&f2)).unwrap();
        assert_eq!(model.shape(), h.shape());
        assert!(model.field().same_field(&FieldCtx::rationals()));
    }

    #[test]
    fn value_map_violation_detected() {
        let f3 = FieldCtx::prime(3).unwrap();
        let h = hn_expand(&branch("t^2", "t^2+t^3", &f3)).unwrap();
        let bad = |_: &FieldElem| BigRational::zero();
        assert!(matches!(
            complex_model(&h, &bad),
            Err(Error::ValueMapViolation(_))
        ));
    }
}
