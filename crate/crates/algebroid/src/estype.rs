//! Resolution data of reduced plane curves given by parametrized branches:
//! point blowups, multiplicity sequences, characteristic exponents (by
//! inverting the subtractive Euclidean structure of the sequence, cross
//! validated against Puiseux gap reading in good characteristic),
//! intersection multiplicities by implicitization and by the Noether
//! infinitely-near-point sum, and equisingularity types.

use crate::coeff::{FieldCtx, FieldElem};
use crate::error::{Error, Result};
use crate::hncurve::{hn_expand, Parametrization, Primitivity};
use crate::series::{resultant, Prec, Series, SeriesOrd, DEFAULT_PRECISION};

/// State of a branch along the blowup process.  The exceptional flags say
/// whether the coordinate axes {x=0} / {y=0} of the current chart are
/// components of the accumulated exceptional divisor through the point.
#[derive(Clone, Debug)]
pub struct BranchState {
    pub param: Parametrization,
    pub history: Vec<BlowupRecord>,
    pub exc_x: bool,
    pub exc_y: bool,
}

/// One blowup step: the multiplicity at the blown-up point, the chart
/// translation constant, and whether the coordinates were swapped first.
#[derive(Clone, Debug)]
pub struct BlowupRecord {
    pub multiplicity: u32,
    pub center: FieldElem,
    pub swapped: bool,
}

impl BranchState {
    pub fn new(param: Parametrization) -> Self {
        BranchState {
            param,
            history: vec![],
            exc_x: false,
            exc_y: false,
        }
    }
}

/// One point blowup of a branch: (x, y) becomes (x, y/x), followed by
/// translating away the constant term c of y/x when ord(y/x) = 0.  When
/// ord(x) > ord(y) the chart with the roles swapped is used and the swap is
/// recorded.
pub fn blowup_step(state: &BranchState) -> Result<BranchState> {
    let p = &state.param;
    let ox = p.x.ord().finite();
    let oy = p.y.ord().finite();
    let swap = match (ox, oy) {
        (Some(a), Some(b)) => a > b,
        (Some(_), None) => false,
        (None, Some(_)) => true,
        (None, None) => {
            return Err(Error::PrecisionExhausted(
                "both coordinates vanish to precision".into(),
            ))
        }
    };
    let (u, w, mut exc_w) = if swap {
        (&p.y, &p.x, state.exc_x)
    } else {
        (&p.x, &p.y, state.exc_y)
    };
    let m = u.ord().finite().expect("divisor order known");
    // the cap compensates the order lost to the division, so exact inputs
    // keep the working precision along the whole resolution
    let cap = Prec::Finite(p.working_precision() + m);
    let quotient = w.exact_div(u, cap)?;
    let field = p.field().clone();
    let (center, new_w) = match quotient.ord() {
        SeriesOrd::Finite(0) => {
            let c = quotient.coeff(&[0]);
            (c.clone(), quotient.sub(&Series::constant(
                &[p.uniformizer()],
                &field,
                c,
                quotient.prec(),
            )))
        }
        _ => (field.zero(), quotient),
    };
    // exceptional bookkeeping in the (u, w) chart: the new exceptional curve
    // is {u = 0}; the strict transform of an old exceptional {w = 0} follows
    // to the new point exactly when the translation constant is zero; an old
    // {u = 0} never does (the branch direction has a nonzero u-component).
    exc_w = exc_w && field.is_zero(&center);
    let exc_u = true;
    let new_param = Parametrization::new(u.clone(), new_w)?;
    let mut history = state.history.clone();
    history.push(BlowupRecord {
        multiplicity: m,
        center,
        swapped: swap,
    });
    Ok(BranchState {
        param: new_param,
        history,
        exc_x: exc_u,
        exc_y: exc_w,
    })
}

/// Has this state reached the stopping point of the resolution: the strict
/// transform is smooth and meets the reduced total transform with normal
/// crossings at a point on at most one exceptional component?
fn resolution_finished(state: &BranchState) -> Result<bool> {
    if state.history.is_empty() {
        return Ok(false);
    }
    let m = state.param.mult()?;
    if m != 1 {
        return Ok(false);
    }
    // after a blowup the point always lies on the fresh exceptional {x=0}
    // of its chart; the chart was normalized so the divisor sits in x
    if state.exc_x && state.exc_y {
        return Ok(false);
    }
    let (ex, ey) = (state.param.x.ord().finite(), state.param.y.ord().finite());
    let transverse = if state.exc_x { ex == Some(1) } else { ey == Some(1) };
    Ok(transverse)
}

/// Multiplicities of the strict transform at the successive infinitely-near
/// points, recorded until the normal-crossings stopping rule holds.
pub fn mult_sequence(p: &Parametrization) -> Result<Vec<u32>> {
    match p.is_primitive() {
        Primitivity::Primitive => {}
        Primitivity::Imprimitive { gcd } => return Err(Error::NonPrimitive(gcd)),
        Primitivity::PrecisionLimited { .. } => {
            return Err(Error::PrecisionExhausted(
                "primitivity undecided at this precision".into(),
            ))
        }
    }
    let mut state = BranchState::new(p.clone());
    let mut seq = vec![];
    let guard = 4 * p.working_precision().max(DEFAULT_PRECISION) as usize;
    loop {
        seq.push(state.param.mult()?);
        state = blowup_step(&state)?;
        if resolution_finished(&state)? {
            return Ok(seq);
        }
        if seq.len() > guard {
            return Err(Error::PrecisionExhausted(
                "resolution does not terminate within the precision guard".into(),
            ));
        }
    }
}

/// Record of a subtractive Euclidean pass: the successive minima of the
/// pair until one side reaches zero, plus the gcd.
fn subtractive_chain(a: u32, b: u32) -> (Vec<u32>, u32) {
    let (mut p, mut q) = (a, b);
    let mut out = vec![];
    while p > 0 && q > 0 {
        out.push(p.min(q));
        if p <= q {
            q -= p;
        } else {
            p -= q;
        }
    }
    (out, p.max(q))
}

/// Characteristic exponents (β_0, β_1, ...) from a multiplicity sequence,
/// by replaying the subtractive Euclidean chains in reverse: the sequence
/// is the concatenation of the chain of (β_0, β_1) and the chains of
/// (e_{i-1}, β_i − β_{i-1}), with e_i = gcd(β_0..β_i).
pub fn char_exponents(m: &[u32]) -> Result<Vec<u32>> {
    if m.is_empty() {
        return Err(Error::MalformedSequence("empty sequence".into()));
    }
    if m.last() != Some(&1) {
        return Err(Error::MalformedSequence("sequence must end in 1".into()));
    }
    if m[0] == 1 {
        if m.iter().any(|&v| v != 1) {
            return Err(Error::MalformedSequence("non-monotone sequence".into()));
        }
        return Ok(vec![1]);
    }
    let mut exps = vec![m[0]];
    let mut pos = 0usize;
    let mut divisor = m[0];
    let mut first_chain = true;
    loop {
        // leading run of the divisor value
        let mut k = 0usize;
        while pos + k < m.len() && m[pos + k] == divisor {
            k += 1;
        }
        if pos + k >= m.len() {
            return Err(Error::MalformedSequence(
                "chain ends before reaching gcd 1".into(),
            ));
        }
        let v = m[pos + k];
        if v >= divisor {
            return Err(Error::MalformedSequence(format!(
                "expected a value below {divisor} at position {}",
                pos + k
            )));
        }
        if first_chain && k == 0 {
            return Err(Error::MalformedSequence(
                "first characteristic exponent must exceed the multiplicity".into(),
            ));
        }
        let b = k as u32 * divisor + v;
        let (chain, g) = subtractive_chain(divisor, b);
        if m.len() < pos + chain.len() || m[pos..pos + chain.len()] != chain[..] {
            return Err(Error::MalformedSequence(format!(
                "sequence does not follow the Euclidean chain of ({divisor}, {b}) at {pos}"
            )));
        }
        pos += chain.len();
        if first_chain {
            exps.push(b);
            first_chain = false;
        } else {
            let last = *exps.last().unwrap();
            exps.push(last + b);
        }
        if g == 1 {
            if pos != m.len() {
                return Err(Error::MalformedSequence(format!(
                    "trailing data after the final chain at {pos}"
                )));
            }
            return Ok(exps);
        }
        divisor = g;
    }
}

/// Characteristic exponents by Puiseux normalization: reparametrize so that
/// x = t^n exactly (extending the field when the unit root requires it) and
/// read the gap exponents of y.  Requires good characteristic p ∤ n.
pub fn puiseux_char_exponents(p: &Parametrization) -> Result<Vec<u32>> {
    match p.is_primitive() {
        Primitivity::Primitive => {}
        Primitivity::Imprimitive { gcd } => return Err(Error::NonPrimitive(gcd)),
        Primitivity::PrecisionLimited { .. } => {
            return Err(Error::PrecisionExhausted(
                "primitivity undecided at this precision".into(),
            ))
        }
    }
    let ox = p.x.ord().finite();
    let oy = p.y.ord().finite();
    let (xs, ys) = match (ox, oy) {
        (Some(a), Some(b)) if a <= b => (p.x.clone(), p.y.clone()),
        (Some(_), Some(_)) => (p.y.clone(), p.x.clone()),
        (Some(_), None) => (p.x.clone(), p.y.clone()),
        (None, Some(_)) => (p.y.clone(), p.x.clone()),
        (None, None) => unreachable!(),
    };
    let n = xs.ord().finite().expect("x nonzero");
    let field = p.field().clone();
    let ch = field.characteristic();
    if ch != 0 && (n as u64).is_multiple_of(ch) {
        return Err(Error::BadCharacteristic { p: ch, n });
    }
    if n == 1 && ys.is_zero() {
        return Ok(vec![1]);
    }
    let cap = Prec::Finite(p.working_precision());
    // unit factor of x: x = t^n * u
    let unit = xs.shift_univar(-(n as i64))?;
    let c0 = unit.coeff(&[0]);
    let (emb, root) = field.adjoin_nth_root(&c0, n as u64)?;
    let (unit, ys, root_field) = if emb.is_identity() {
        (unit, ys, field.clone())
    } else {
        let target = emb.target.clone();
        (
            unit.map_coeffs(&target, &mut |c| Ok(emb.map(c)))?,
            ys.map_coeffs(&target, &mut |c| Ok(emb.map(c)))?,
            target,
        )
    };
    let v = unit.nth_root_unit(n as u64, &root, cap)?;
    // s(t) = t * v(t) has order 1; in the new uniformizer x = s^n exactly
    let var = p.uniformizer();
    let t = Series::var(&[var], &root_field, var, v.prec());
    let s = t.mul(&v);
    let sigma = s.invert_series()?;
    let y_norm = ys.compose(&[sigma])?;
    // gap reading
    let mut exps = vec![n];
    let mut e = n;
    for (mono, _) in y_norm.terms() {
        if e == 1 {
            break;
        }
        let k = mono.0[0];
        if k % e != 0 {
            exps.push(k);
            e = gcd_u32(e, k);
        }
    }
    if e != 1 {
        return Err(Error::PrecisionExhausted(
            "support exhausted before the exponent gcd reached 1".into(),
        ));
    }
    Ok(exps)
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// Result of an intersection computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Intersection {
    Finite(u64),
    /// The branches coincide.
    Infinite,
}

impl Intersection {
    pub fn finite(self) -> Option<u64> {
        match self {
            Intersection::Finite(v) => Some(v),
            Intersection::Infinite => None,
        }
    }
}

/// Do two primitive parametrizations define the same branch?  Decided by
/// comparing canonical Hamburger-Noether data to the common precision.
pub fn branches_coincide(p: &Parametrization, q: &Parametrization) -> Result<bool> {
    let hp = hn_expand(p)?;
    let hq = hn_expand(q)?;
    Ok(hp.same_rows(&hq))
}

/// Intersection multiplicity of two distinct branches, computed as the
/// t-order of f_Q(x_P(t), y_P(t)) with f_Q the implicit equation of Q.
pub fn intersection_mult(p: &Parametrization, q: &Parametrization) -> Result<Intersection> {
    let prec = p.working_precision().min(q.working_precision());
    let f_q = implicitize(q, prec)?;
    let composed = f_q.compose(&[p.x.with_prec(Prec::Finite(prec)), p.y.with_prec(Prec::Finite(prec))])?;
    match composed.ord() {
        SeriesOrd::Finite(v) => Ok(Intersection::Finite(v as u64)),
        SeriesOrd::Infinite { .. } => {
            if branches_coincide(p, q)? {
                Ok(Intersection::Infinite)
            } else {
                Err(Error::PrecisionExhausted(
                    "intersection exceeds the working precision".into(),
                ))
            }
        }
    }
}

/// Independent oracle: Noether's formula, summing products of
/// multiplicities over the common infinitely-near points of synchronized
/// blowups.
pub fn intersection_mult_noether(p: &Parametrization, q: &Parametrization) -> Result<u64> {
    let field = p.field().clone();
    if !field.same_field(q.field()) {
        return Err(Error::FieldMismatch);
    }
    let mut a = p.clone();
    let mut b = q.clone();
    let mut total: u64 = 0;
    let guard = 4 * p.working_precision().max(q.working_precision()) as usize + 8;
    for _ in 0..guard {
        let ma = a.mult()? as u64;
        let mb = b.mult()? as u64;
        total += ma * mb;
        // directions on the exceptional line: [coeff_{t^m} x : coeff_{t^m} y]
        let dir = |br: &Parametrization| -> Result<(FieldElem, FieldElem)> {
            let m = br.mult()?;
            Ok((br.x.coeff(&[m]), br.y.coeff(&[m])))
        };
        let (ax, ay) = dir(&a)?;
        let (bx, by) = dir(&b)?;
        let same_dir = field.mul(&ax, &by) == field.mul(&ay, &bx);
        if !same_dir {
            return Ok(total);
        }
        // both pass through the same point of the exceptional line: blow up
        // in the common chart
        let x_chart = !field.is_zero(&ax);
        let transform = |br: &Parametrization| -> Result<Parametrization> {
            let (u, w) = if x_chart {
                (br.x.clone(), br.y.clone())
            } else {
                (br.y.clone(), br.x.clone())
            };
            let m = u.ord().finite().ok_or(Error::NonTerminating)?;
            let cap = Prec::Finite(br.working_precision() + m);
            let quot = w.exact_div(&u, cap)?;
            let centered = match quot.ord() {
                SeriesOrd::Finite(0) => {
                    let c = quot.coeff(&[0]);
                    quot.sub(&Series::constant(
                        &[br.uniformizer()],
                        &field,
                        c,
                        quot.prec(),
                    ))
                }
                _ => quot,
            };
            if x_chart {
                Parametrization::new(u, centered)
            } else {
                Parametrization::new(centered, u)
            }
        };
        a = transform(&a)?;
        b = transform(&b)?;
    }
    if branches_coincide(p, q)? {
        Err(Error::NonTerminating)
    } else {
        Err(Error::PrecisionExhausted(
            "intersection exceeds the synchronization guard".into(),
        ))
    }
}

/// The implicit equation of a branch: the generator of the kernel ideal,
/// computed as Res_z(x − X(z), y − Y(z)) and normalized so the lowest
/// coefficient is 1.  Satisfies compose(f, P) = 0 to the requested
/// precision and ord(f) = mult(P).
pub fn implicitize(p: &Parametrization, precision: u32) -> Result<Series> {
    match p.is_primitive() {
        Primitivity::Primitive => {}
        Primitivity::Imprimitive { gcd } => return Err(Error::NonPrimitive(gcd)),
        Primitivity::PrecisionLimited { .. } => {
            return Err(Error::PrecisionExhausted(
                "primitivity undecided at this precision".into(),
            ))
        }
    }
    let field = p.field().clone();
    // truncation degree for the parametrization: beyond the working
    // precision the resultant only changes in degrees above `precision`
    let trunc = match (p.x.prec().min(p.y.prec())).finite() {
        Some(n) => n.saturating_sub(1),
        None => 2 * precision.max(4),
    };
    let vars = ["x", "y"];
    let zero = Series::zero(&vars, &field, Prec::Exact);
    let embed_coeff = |c: &FieldElem| Series::constant(&vars, &field, c.clone(), Prec::Exact);
    // P(z) = x − X(z), Q(z) = y − Y(z) as polynomials in z over K[[x, y]]
    let build = |s: &Series, var: &Series| -> Vec<Series> {
        let deg = s
            .terms()
            .filter(|(m, _)| m.0[0] <= trunc)
            .map(|(m, _)| m.0[0])
            .max()
            .unwrap_or(0);
        let mut coeffs = vec![zero.clone(); deg as usize + 1];
        coeffs[0] = var.clone();
        for (m, c) in s.terms() {
            let e = m.0[0];
            if e <= trunc {
                coeffs[e as usize] = coeffs[e as usize].sub(&embed_coeff(c));
            }
        }
        coeffs
    };
    let x = Series::var(&vars, &field, "x", Prec::Exact);
    let y = Series::var(&vars, &field, "y", Prec::Exact);
    let pz = build(&p.x, &x);
    let qz = build(&p.y, &y);
    let res = resultant(&pz, &qz, Prec::Exact)?;
    let f = res.with_prec(Prec::Finite(precision + 1)).normalize_lowest();
    // contract checks, loud on failure
    let n = p.mult()?;
    if f.ord().finite() != Some(n) {
        return Err(Error::PrecisionExhausted(format!(
            "implicit equation has order {:?}, expected {n}; raise the precision",
            f.ord()
        )));
    }
    let check = f.compose(&[p.x.with_prec(Prec::Finite(precision)), p.y.with_prec(Prec::Finite(precision))])?;
    match check.ord() {
        SeriesOrd::Infinite { .. } => Ok(f),
        SeriesOrd::Finite(v) if v >= precision => Ok(f),
        SeriesOrd::Finite(v) => Err(Error::PrecisionExhausted(format!(
            "implicit equation only vanishes to order {v} on the branch"
        ))),
    }
}

/// The equisingularity type of a reduced curve: per-branch multiplicity
/// sequences and the symmetric matrix of pairwise intersection
/// multiplicities (diagonal unused, stored as 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EsType {
    pub sequences: Vec<Vec<u32>>,
    pub intersections: Vec<Vec<u64>>,
}

/// Compute the es-type of a collection of pairwise distinct primitive
/// branches.
pub fn es_type(branches: &[Parametrization]) -> Result<EsType> {
    let n = branches.len();
    if n == 0 {
        return Err(Error::InvalidInput("no branches".into()));
    }
    let mut sequences = vec![];
    for b in branches {
        sequences.push(mult_sequence(b)?);
    }
    let mut inter = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            match intersection_mult(&branches[i], &branches[j])? {
                Intersection::Finite(v) => {
                    inter[i][j] = v;
                    inter[j][i] = v;
                }
                Intersection::Infinite => return Err(Error::DuplicateBranch(i, j)),
            }
        }
    }
    Ok(EsType {
        sequences,
        intersections: inter,
    })
}

/// Equality of es-types up to a simultaneous permutation of the branches.
pub fn es_equal(a: &EsType, b: &EsType) -> bool {
    let n = a.sequences.len();
    if n != b.sequences.len() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    // try all permutations; desk-scale branch counts
    fn heap(perm: &mut Vec<usize>, k: usize, a: &EsType, b: &EsType) -> bool {
        if k == 1 {
            return check(perm, a, b);
        }
        for i in 0..k {
            if heap(perm, k - 1, a, b) {
                return true;
            }
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
        false
    }
    fn check(perm: &[usize], a: &EsType, b: &EsType) -> bool {
        let n = perm.len();
        for i in 0..n {
            if a.sequences[i] != b.sequences[perm[i]] {
                return false;
            }
            for j in 0..n {
                if i != j && a.intersections[i][j] != b.intersections[perm[i]][perm[j]] {
                    return false;
                }
            }
        }
        true
    }
    heap(&mut perm, n, a, b)
}

/// Good characteristic: p = 0 or p divides no branch multiplicity.
pub fn good_characteristic(branches: &[Parametrization], field: &FieldCtx) -> bool {
    let p = field.characteristic();
    if p == 0 {
        return true;
    }
    branches.iter().all(|b| match b.mult() {
        Ok(m) => !(m as u64).is_multiple_of(p),
        Err(_) => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn branch(x: &str, y: &str, field: &FieldCtx) -> Parametrization {
        Parametrization::parse(x, y, "t", field).unwrap()
    }

    #[test]
    fn blowup_examples() {
        let s = BranchState::new(branch("t^2", "t^3", &q()));
        let s1 = blowup_step(&s).unwrap();
        assert!(s1.param.x.eq_to_prec(&crate::series::parse("t^2", &["t"], &q()).unwrap(), 20));
        assert!(s1.param.y.eq_to_prec(&crate::series::parse("t", &["t"], &q()).unwrap(), 20));
        assert_eq!(s1.history[0].multiplicity, 2);
        assert!(q().is_zero(&s1.history[0].center));

        let s = BranchState::new(branch("t", "t^2", &q()));
        let s1 = blowup_step(&s).unwrap();
        assert!(s1.param.y.eq_to_prec(&crate::series::parse("t", &["t"], &q()).unwrap(), 20));

        // translation case: (t^2, t^2 + t^3) -> (t^2, t) with center 1
        let s = BranchState::new(branch("t^2", "t^2+t^3", &q()));
        let s1 = blowup_step(&s).unwrap();
        assert_eq!(s1.history[0].center, q().one());
        assert!(s1.param.y.eq_to_prec(&crate::series::parse("t", &["t"], &q()).unwrap(), 20));
    }

    #[test]
    fn mult_sequences() {
        assert_eq!(mult_sequence(&branch("t^2", "t^3", &q())).unwrap(), vec![2, 1, 1]);
        assert_eq!(mult_sequence(&branch("t^3", "t^5", &q())).unwrap(), vec![3, 2, 1, 1]);
        assert_eq!(mult_sequence(&branch("t", "t^4", &q())).unwrap(), vec![1]);
        assert_eq!(mult_sequence(&branch("t", "0", &q())).unwrap(), vec![1]);
        assert_eq!(
            mult_sequence(&branch("t^4", "t^6+t^7", &q())).unwrap(),
            vec![4, 2, 2, 1, 1]
        );
        assert_eq!(mult_sequence(&branch("t^2", "t^7", &q())).unwrap(), vec![2, 2, 2, 1, 1]);
        assert_eq!(mult_sequence(&branch("t^3", "t^4", &q())).unwrap(), vec![3, 1, 1, 1]);
    }

    #[test]
    fn mult_sequence_works_in_bad_characteristic() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(mult_sequence(&branch("t^2", "t^3", &f2)).unwrap(), vec![2, 1, 1]);
        let f3 = FieldCtx::prime(3).unwrap();
        assert_eq!(mult_sequence(&branch("t^3", "t^5", &f3)).unwrap(), vec![3, 2, 1, 1]);
    }

    #[test]
    fn char_exponent_inversion() {
        assert_eq!(char_exponents(&[2, 1, 1]).unwrap(), vec![2, 3]);
        assert_eq!(char_exponents(&[3, 2, 1, 1]).unwrap(), vec![3, 5]);
        assert_eq!(char_exponents(&[1]).unwrap(), vec![1]);
        assert_eq!(char_exponents(&[4, 2, 2, 1, 1]).unwrap(), vec![4, 6, 7]);
        assert_eq!(char_exponents(&[4, 2, 2, 2, 1, 1]).unwrap(), vec![4, 6, 9]);
        assert_eq!(char_exponents(&[2, 2, 1, 1]).unwrap(), vec![2, 5]);
        assert_eq!(char_exponents(&[6, 3, 3, 3, 1, 1, 1]).unwrap(), vec![6, 9, 13]);
        assert!(char_exponents(&[2, 2]).is_err());
        assert!(char_exponents(&[]).is_err());
    }

    #[test]
    fn puiseux_examples() {
        assert_eq!(puiseux_char_exponents(&branch("t^2", "t^3", &q())).unwrap(), vec![2, 3]);
        assert_eq!(
            puiseux_char_exponents(&branch("t^4", "t^6+t^7", &q())).unwrap(),
            vec![4, 6, 7]
        );
        let f2 = FieldCtx::prime(2).unwrap();
        assert!(matches!(
            puiseux_char_exponents(&branch("t^2", "t^3", &f2)),
            Err(Error::BadCharacteristic { p: 2, n: 2 })
        ));
    }

    #[test]
    fn puiseux_with_unit_normalization() {
        // x = 2t^2(1 + t): needs the square root of 2, which lives in F_25
        let f5 = FieldCtx::prime(5).unwrap();
        let p = branch("2*t^2+2*t^3", "t^3", &f5);
        let exps = puiseux_char_exponents(&p).unwrap();
        assert_eq!(exps, char_exponents(&mult_sequence(&p).unwrap()).unwrap());
    }

    #[test]
    fn euclid_inversion_matches_puiseux() {
        for (x, y) in [
            ("t^2", "t^3"),
            ("t^3", "t^5"),
            ("t^4", "t^6+t^7"),
            ("t^2", "t^7"),
            ("t^3", "t^4"),
            ("t^4", "t^6+t^9"),
            ("t^6", "t^9+t^13"),
            ("t^5", "t^7+t^8"),
        ] {
            let p = branch(x, y, &q());
            let via_blowup = char_exponents(&mult_sequence(&p).unwrap()).unwrap();
            let via_puiseux = puiseux_char_exponents(&p).unwrap();
            assert_eq!(via_blowup, via_puiseux, "branch ({x}, {y})");
        }
    }

    #[test]
    fn implicitize_examples() {
        let f = implicitize(&branch("t", "t^2", &q()), 12).unwrap();
        let expect = crate::series::parse("-y+x^2", &["x", "y"], &q()).unwrap().normalize_lowest();
        assert!(f.eq_to_prec(&expect, 12));

        let f = implicitize(&branch("t^2", "t^3", &q()), 12).unwrap();
        assert_eq!(f.ord().finite(), Some(2));
        let t2 = crate::series::parse("t^2", &["t"], &q()).unwrap();
        let t3 = crate::series::parse("t^3", &["t"], &q()).unwrap();
        assert!(f.compose(&[t2, t3]).unwrap().is_zero());

        let f = implicitize(&branch("t^3", "t^5", &q()), 12).unwrap();
        assert_eq!(f.ord().finite(), Some(3));
    }

    #[test]
    fn intersections() {
        // (t, 0) vs (t, t^2): tangent line and parabola meet with multiplicity 2
        let a = branch("t", "0", &q());
        let b = branch("t", "t^2", &q());
        assert_eq!(intersection_mult(&a, &b).unwrap(), Intersection::Finite(2));
        assert_eq!(intersection_mult_noether(&a, &b).unwrap(), 2);

        // transverse axes
        let c = branch("0", "t", &q());
        assert_eq!(intersection_mult(&a, &c).unwrap(), Intersection::Finite(1));
        assert_eq!(intersection_mult_noether(&a, &c).unwrap(), 1);

        // cusp against its tangent line
        let cusp = branch("t^2", "t^3", &q());
        assert_eq!(intersection_mult(&cusp, &a).unwrap(), Intersection::Finite(3));
        assert_eq!(intersection_mult_noether(&cusp, &a).unwrap(), 3);

        // two same-tangent cusps
        let cusp2 = branch("t^2", "t^3+t^5", &q());
        assert_eq!(intersection_mult(&cusp, &cusp2).unwrap(), Intersection::Finite(8));
        assert_eq!(intersection_mult_noether(&cusp, &cusp2).unwrap(), 8);
    }

    #[test]
    fn coincident_branches_detected() {
        // (t^2, -t^3) is the cusp reparametrized by t -> -t: the same branch
        let a = branch("t^2", "t^3", &q());
        let b = branch("t^2", "-t^3", &q());
        assert_eq!(intersection_mult(&a, &b).unwrap(), Intersection::Infinite);
        assert!(matches!(
            intersection_mult_noether(&a, &b),
            Err(Error::NonTerminating)
        ));
    }

    #[test]
    fn es_types_and_equality() {
        let cusp1 = es_type(&[branch("t^2", "t^3", &q())]).unwrap();
        let cusp2 = es_type(&[branch("t^2", "t^3+t^4", &q())]).unwrap();
        assert!(es_equal(&cusp1, &cusp2));

        let node = es_type(&[branch("t", "0", &q()), branch("0", "t", &q())]).unwrap();
        assert!(!es_equal(&cusp1, &node));

        let tacnode = es_type(&[branch("t", "0", &q()), branch("t", "t^2", &q())]).unwrap();
        assert!(!es_equal(&node, &tacnode));
        assert_eq!(node.intersections[0][1], 1);
        assert_eq!(tacnode.intersections[0][1], 2);

        // permutation invariance
        let swapped = es_type(&[branch("t", "t^2", &q()), branch("t", "0", &q())]).unwrap();
        assert!(es_equal(&tacnode, &swapped));

        assert!(matches!(
            es_type(&[branch("t^2", "t^3", &q()), branch("t^2", "-t^3", &q())]),
            Err(Error::DuplicateBranch(0, 1))
        ));
    }

    #[test]
    fn es_equal_is_an_equivalence_relation() {
        let samples = vec![
            es_type(&[branch("t^2", "t^3", &q())]).unwrap(),
            es_type(&[branch("t^2", "t^3+t^4", &q())]).unwrap(),
            es_type(&[branch("t", "0", &q()), branch("0", "t", &q())]).unwrap(),
            es_type(&[branch("t", "0", &q()), branch("t", "t^2", &q())]).unwrap(),
            es_type(&[branch("t", "t^2", &q()), branch("t", "0", &q())]).unwrap(),
            es_type(&[branch("t^3", "t^5", &q())]).unwrap(),
        ];
        for a in &samples {
            assert!(es_equal(a, a), "reflexive");
            for b in &samples {
                assert_eq!(es_equal(a, b), es_equal(b, a), "symmetric");
                for c in &samples {
                    if es_equal(a, b) && es_equal(b, c) {
                        assert!(es_equal(a, c), "transitive");
                    }
                }
            }
        }
    }

    #[test]
    fn good_characteristic_predicate() {
        let f5 = FieldCtx::prime(5).unwrap();
        let b23 = [branch("t^2", "t^3", &f5), branch("t^3", "t^4", &f5)];
        assert!(good_characteristic(&b23, &f5));
        let f2 = FieldCtx::prime(2).unwrap();
        let cusp = [branch("t^2", "t^3", &f2)];
        assert!(!good_characteristic(&cusp, &f2));
        assert!(good_characteristic(&[branch("t^2", "t^3", &q())], &q()));
    }

    #[test]
    fn mult_sequence_reparametrization_invariance() {
        // t -> unit * t + higher terms leaves the sequence unchanged
        let f5 = FieldCtx::prime(5).unwrap();
        let base = branch("t^4", "t^6+t^7", &f5);
        let seq = mult_sequence(&base).unwrap();
        for s in 0..20u64 {
            let u1 = 1 + (s % 4);
            let u2 = (s * 3 + 1) % 5;
            let u3 = (s * 7 + 2) % 5;
            let sub = crate::series::parse(&format!("{u1}*t+{u2}*t^2+{u3}*t^3"), &["t"], &f5).unwrap();
            let p = Parametrization::new(
                base.x.compose(&[sub.clone()]).unwrap(),
                base.y.compose(&[sub]).unwrap(),
            )
            .unwrap();
            assert_eq!(mult_sequence(&p).unwrap(), seq, "seed {s}");
        }
    }
}
