//! Families of parametrizations over polynomial parameters: elimination of
//! the uniformizing variable to a deformation of the equation,
//! specialization to fibers, equisingularity-constancy sampling, and the
//! scripted bad-characteristic pathology experiment.

use crate::coeff::{FieldCtx, FieldElem};
use crate::determinacy::{jet_equiv_bruteforce, EquivSearch, Flavor};
use crate::error::{Error, Result};
use crate::estype::{char_exponents, implicitize, mult_sequence};
use crate::hncurve::Parametrization;
use crate::series::{parse, resultant, Prec, Series};

/// A family of parametrizations: X, Y in the uniformizer z and polynomial
/// parameters t_1..t_m, with the special point t = 0.
#[derive(Clone, Debug)]
pub struct ParamFamily {
    pub x: Series,
    pub y: Series,
    /// Name of the uniformizing variable (the first variable of x and y).
    pub uniformizer: String,
    /// Names of the parameter variables.
    pub params: Vec<String>,
}

impl ParamFamily {
    /// Build a family from exact series in the uniformizer and parameters.
    /// The specialization at t = 0 must be a valid primitive parametrization.
    pub fn new(x: Series, y: Series) -> Result<Self> {
        if x.vars() != y.vars() || x.vars().is_empty() {
            return Err(Error::VariableMismatch(
                x.vars().join(","),
                y.vars().join(","),
            ));
        }
        if !x.field().same_field(y.field()) {
            return Err(Error::FieldMismatch);
        }
        if !matches!(x.prec(), Prec::Exact) || !matches!(y.prec(), Prec::Exact) {
            return Err(Error::InvalidInput(
                "families must be polynomial (exact) in the uniformizer and parameters".into(),
            ));
        }
        let uniformizer = x.vars()[0].clone();
        let params: Vec<String> = x.vars()[1..].to_vec();
        let fam = ParamFamily {
            x,
            y,
            uniformizer,
            params,
        };
        let special = fam.specialize(&vec![fam.field().zero(); fam.params.len()])?;
        match special.is_primitive() {
            crate::hncurve::Primitivity::Primitive => Ok(fam),
            _ => Err(Error::NonPrimitiveFiber),
        }
    }

    /// Parse a family from series text in the given variables, e.g.
    /// x = "z^2", y = "z^3 + t*z^4" with vars ["z", "t"].
    pub fn parse(x: &str, y: &str, vars: &[&str], field: &FieldCtx) -> Result<Self> {
        let xs = parse(x, vars, field)?;
        let ys = parse(y, vars, field)?;
        ParamFamily::new(xs, ys)
    }

    pub fn field(&self) -> &FieldCtx {
        self.x.field()
    }

    /// The fiber parametrization at a parameter point.
    pub fn specialize(&self, point: &[FieldElem]) -> Result<Parametrization> {
        if point.len() != self.params.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} parameter values, got {}",
                self.params.len(),
                point.len()
            )));
        }
        let assignments: Vec<(&str, FieldElem)> = self
            .params
            .iter()
            .map(|s| s.as_str())
            .zip(point.iter().cloned())
            .collect();
        let x = self.x.substitute_values(&assignments)?;
        let y = self.y.substitute_values(&assignments)?;
        let p = Parametrization::new(x, y)?;
        match p.is_primitive() {
            crate::hncurve::Primitivity::Primitive => Ok(p),
            _ => Err(Error::NonPrimitiveFiber),
        }
    }
}

/// Eliminate the uniformizer from x − X(z, t) and y − Y(z, t): the result
/// is a deformation F(x, y, t) of the equation with F(x, y, 0) equal to the
/// implicit equation of the special fiber up to a unit.
pub fn eliminate_parameter(fam: &ParamFamily, precision: u32) -> Result<Series> {
    let res = eliminate_exact(fam)?;
    Ok(res.with_prec(Prec::Finite(precision + 1)).normalize_lowest())
}

/// The untruncated resultant behind [`eliminate_parameter`]; exact because
/// families are polynomial.
fn eliminate_exact(fam: &ParamFamily) -> Result<Series> {
    let field = fam.field().clone();
    // both z-orders at the special point must not drop simultaneously
    let z0 = fam.specialize(&vec![field.zero(); fam.params.len()]);
    match z0 {
        Ok(p) => {
            let ox = p.x.ord().finite();
            let oy = p.y.ord().finite();
            if ox.is_none() && oy.is_none() {
                return Err(Error::DegenerateFamily);
            }
        }
        Err(Error::NonPrimitiveFiber) => return Err(Error::DegenerateFamily),
        Err(e) => return Err(e),
    }
    // output variables: x, y, then the parameters
    let mut out_vars: Vec<&str> = vec!["x", "y"];
    let param_names: Vec<String> = fam.params.clone();
    for p in &param_names {
        out_vars.push(p);
    }
    let zero = Series::zero(&out_vars, &field, Prec::Exact);
    // coefficient of z^e in X is a polynomial in the parameters
    let z_degree = |s: &Series| s.terms().map(|(m, _)| m.0[0]).max().unwrap_or(0);
    let build = |s: &Series, var: &str| -> Result<Vec<Series>> {
        let deg = z_degree(s);
        let mut coeffs = vec![zero.clone(); deg as usize + 1];
        coeffs[0] = Series::var(&out_vars, &field, var, Prec::Exact);
        for (m, c) in s.terms() {
            let e = m.0[0] as usize;
            // remaining exponents are parameter powers
            let mut exps = vec![0u32; out_vars.len()];
            for (i, _) in param_names.iter().enumerate() {
                exps[2 + i] = m.0[1 + i];
            }
            let mono = Series::monomial(&out_vars, &field, &exps, field.neg(c), Prec::Exact);
            coeffs[e] = coeffs[e].add(&mono);
        }
        Ok(coeffs)
    };
    let pz = build(&fam.x, "x")?;
    let qz = build(&fam.y, "y")?;
    resultant(&pz, &qz, Prec::Exact)
}

/// Check the specialization contract of [`eliminate_parameter`] at one
/// parameter point: F(x, y, t0) equals unit · implicitize(fiber) up to jet
/// level `level`, verified by exact division (the quotient must be a unit).
pub fn elimination_contract_holds(
    fam: &ParamFamily,
    point: &[FieldElem],
    level: u32,
) -> Result<bool> {
    let fiber = fam.specialize(point)?;
    let assignments: Vec<(&str, FieldElem)> = fam
        .params
        .iter()
        .map(|s| s.as_str())
        .zip(point.iter().cloned())
        .collect();
    let f_at = eliminate_exact(fam)?.substitute_values(&assignments)?;
    if f_at.is_zero() {
        return Ok(false);
    }
    let fiber_eq = implicitize(&fiber, level + 4)?;
    let quot = match f_at.exact_div(&fiber_eq, Prec::Finite(level)) {
        Ok(q) => q,
        Err(Error::PrecisionExhausted(_)) | Err(Error::InvalidInput(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(quot.ord().finite() == Some(0))
}

/// Equisingularity data of a single branch: multiplicity sequence and
/// characteristic exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchEs {
    pub mults: Vec<u32>,
    pub char_exps: Vec<u32>,
}

fn branch_es(p: &Parametrization) -> Result<BranchEs> {
    let mults = mult_sequence(p)?;
    let char_exps = char_exponents(&mults)?;
    Ok(BranchEs { mults, char_exps })
}

/// Report of an equisingularity sampling run.  A sampling verdict only:
/// constancy over the sampled points is evidence, not a proof over the
/// whole base.
#[derive(Clone, Debug)]
pub struct EsConstancyReport {
    pub constant: bool,
    pub special: BranchEs,
    pub fibers: Vec<(Vec<FieldElem>, BranchEs)>,
}

/// Compute the es-data of every sampled fiber and compare with the special
/// fiber.
pub fn es_constancy_sample(
    fam: &ParamFamily,
    samples: &[Vec<FieldElem>],
) -> Result<EsConstancyReport> {
    let field = fam.field().clone();
    let special = branch_es(&fam.specialize(&vec![field.zero(); fam.params.len()])?)?;
    let mut fibers = vec![];
    let mut constant = true;
    for point in samples {
        let es = branch_es(&fam.specialize(point)?)?;
        if es != special {
            constant = false;
        }
        fibers.push((point.clone(), es));
    }
    Ok(EsConstancyReport {
        constant,
        special,
        fibers,
    })
}

/// One cell of the pathology table: was a right-equivalence witness found
/// between f_t and f_t'?
#[derive(Clone, Debug)]
pub struct PathologyCell {
    pub t: FieldElem,
    pub t_prime: FieldElem,
    pub witness_found: bool,
}

/// Report of the scripted experiment: for every pair (t, t') over the
/// coefficient field, the outcome of the brute-force jet equivalence
/// search.  Absence of a witness over F_q is evidence, not a proof of
/// non-equivalence over the algebraic closure.
#[derive(Clone, Debug)]
pub struct PathologyReport {
    pub p: u64,
    pub field: FieldCtx,
    pub jet_degree: u32,
    pub cells: Vec<PathologyCell>,
    /// Witnesses occur exactly on the diagonal t = t'.
    pub diagonal_only: bool,
}

/// The family f_t = x^p + t·x^(p+1) over F_{p^2}: in characteristic p
/// distinct parameters give right-inequivalent germs, so the family meets
/// infinitely many normal forms.  Runs the full pair table with the
/// brute-force search at jet degree p + 1.
pub fn pathology_family(p: u64) -> Result<PathologyReport> {
    if !matches!(p, 2 | 3 | 5) {
        return Err(Error::InvalidInput(
            "pathology experiment is guarded to p in {2, 3, 5}".into(),
        ));
    }
    let min_poly = crate::coeff::polyfp::find_irreducible(p, 2);
    let signed: Vec<i64> = min_poly.iter().map(|&c| c as i64).collect();
    let fq = FieldCtx::extension(p, "a", &signed)?;
    let builder = |t: &FieldElem| -> Result<Series> {
        let x = Series::var(&["x"], &fq, "x", Prec::Exact);
        Ok(x.pow(p as u32).add(&x.pow(p as u32 + 1).scale(t)))
    };
    let report = equivalence_table(&fq, &builder, (p + 1) as u32)?;
    Ok(PathologyReport {
        p,
        field: fq,
        jet_degree: (p + 1) as u32,
        diagonal_only: report
            .iter()
            .all(|c| c.witness_found == (c.t == c.t_prime)),
        cells: report,
    })
}

/// Generic pair table for a one-parameter family of one-variable germs:
/// runs the right-equivalence brute-force search for every (t, t') in the
/// field.
pub fn equivalence_table(
    field: &FieldCtx,
    builder: &dyn Fn(&FieldElem) -> Result<Series>,
    jet_degree: u32,
) -> Result<Vec<PathologyCell>> {
    let elems = field
        .elements()
        .ok_or_else(|| Error::InvalidInput("pair table needs a finite field".into()))?;
    let mut cells = vec![];
    for t in &elems {
        let f = builder(t)?;
        for t_prime in &elems {
            let g = builder(t_prime)?;
            let found = match jet_equiv_bruteforce(&f, &g, Flavor::Right, jet_degree)? {
                EquivSearch::Witness(_) => true,
                EquivSearch::NotFoundAtThisScale => false,
            };
            cells.push(PathologyCell {
                t: t.clone(),
                t_prime: t_prime.clone(),
                witness_found: found,
            });
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::parse;

    fn f5() -> FieldCtx {
        FieldCtx::prime(5).unwrap()
    }

    #[test]
    fn eliminate_simple_families() {
        let q = FieldCtx::rationals();
        // no parameters: smooth parabola
        let fam = ParamFamily::parse("z", "z^2", &["z"], &q).unwrap();
        let f = eliminate_parameter(&fam, 10).unwrap();
        let expect = parse("y-x^2", &["x", "y"], &q).unwrap().normalize_lowest();
        assert!(f.eq_to_prec(&expect, 10));

        // cusp
        let fam = ParamFamily::parse("z^2", "z^3", &["z"], &q).unwrap();
        let f = eliminate_parameter(&fam, 10).unwrap();
        let expect = parse("x^3-y^2", &["x", "y"], &q).unwrap().normalize_lowest();
        assert!(f.eq_to_prec(&expect, 10));
    }

    #[test]
    fn eliminate_with_parameter_specializes() {
        let q = FieldCtx::rationals();
        let fam = ParamFamily::parse("z^2", "z^3+t*z^5", &["z", "t"], &q).unwrap();
        let f = eliminate_parameter(&fam, 12).unwrap();
        assert_eq!(f.ord().finite(), Some(2));
        // the contract holds at the special point and away from it
        assert!(elimination_contract_holds(&fam, &[q.zero()], 8).unwrap());
        assert!(elimination_contract_holds(&fam, &[q.one()], 8).unwrap());
    }

    #[test]
    fn specialize_fibers() {
        let fam = ParamFamily::parse("z^2", "z^3+t*z^4", &["z", "t"], &f5()).unwrap();
        let p0 = fam.specialize(&[f5().zero()]).unwrap();
        assert!(p0.x.eq_to_prec(&parse("t^2", &["t"], &f5()).unwrap().rename_vars(&["z"]), 20));
        let p1 = fam.specialize(&[f5().one()]).unwrap();
        assert!(p1.is_primitive().is_primitive());

        // degenerate fiber: (z^2, t z^3) at t = 0
        let fam = ParamFamily::parse("z^2", "t*z^3", &["z", "t"], &f5());
        assert!(matches!(fam, Err(Error::NonPrimitiveFiber)));
    }

    #[test]
    fn es_constancy_sampling() {
        let field = f5();
        let fam = ParamFamily::parse("z^2", "z^3+t*z^4", &["z", "t"], &field).unwrap();
        let samples: Vec<Vec<FieldElem>> =
            (0..5).map(|i| vec![field.from_i64(i)]).collect();
        let rep = es_constancy_sample(&fam, &samples).unwrap();
        assert!(rep.constant);
        assert_eq!(rep.special.char_exps, vec![2, 3]);

        // (z^2, z^5 + t z^3): t = 0 gives (2,5), t != 0 gives (2,3)
        let fam = ParamFamily::parse("z^2", "z^5+t*z^3", &["z", "t"], &field).unwrap();
        let rep = es_constancy_sample(&fam, &[vec![field.zero()], vec![field.one()]]).unwrap();
        assert!(!rep.constant);
        assert_eq!(rep.special.char_exps, vec![2, 5]);
        assert_eq!(rep.fibers[1].1.char_exps, vec![2, 3]);

        // no parameters: trivially constant
        let fam = ParamFamily::parse("z^2", "z^3", &["z"], &field).unwrap();
        let rep = es_constancy_sample(&fam, &[vec![]]).unwrap();
        assert!(rep.constant);
    }

    #[test]
    fn hn_shape_families_are_equisingular_at_samples() {
        // a family with fixed Hamburger-Noether row shape has constant
        // es-type: vary the coefficients over F_5 and compare the fibers
        use crate::hncurve::{hn_to_param, HNExpansion, HnRow};
        let field = f5();
        let mut reference: Option<BranchEs> = None;
        let mut count = 0;
        for seed in 0..40u64 {
            let mix = |k: u64| (seed.wrapping_mul(6364136223846793005).wrapping_add(k)) % 5;
            let coeffs = vec![field.from_i64(mix(1) as i64), field.from_i64(mix(2) as i64)];
            let c2 = 1 + mix(3) % 4;
            let c5 = mix(4);
            let text = format!("{c2}*t^2+{c5}*t^5+t^7");
            let h = HNExpansion {
                rows: vec![HnRow { h: 2, coeffs }],
                final_series: parse(&text, &["t"], &field).unwrap(),
                swapped: false,
            };
            let p = hn_to_param(&h, 28).unwrap();
            if !p.is_primitive().is_primitive() {
                continue;
            }
            let es = branch_es(&p).unwrap();
            match &reference {
                None => reference = Some(es),
                Some(r) => assert_eq!(&es, r, "seed {seed}"),
            }
            count += 1;
            if count >= 20 {
                break;
            }
        }
        assert!(count >= 20, "only {count} samples");
    }

    #[test]
    fn pathology_p2_diagonal_only() {
        let rep = pathology_family(2).unwrap();
        assert_eq!(rep.field.order(), Some(4));
        assert!(rep.diagonal_only);
        // the diagonal itself carries identity witnesses
        assert!(rep
            .cells
            .iter()
            .filter(|c| c.t == c.t_prime)
            .all(|c| c.witness_found));
    }

    #[test]
    fn control_family_good_characteristic() {
        // x^3 + t x^4 over F_5: x^3 is right 3-determined (2μ − ord + 2 = 3),
        // so the x^4 term never matters and every pair is equivalent
        let field = f5();
        let builder = |t: &FieldElem| -> Result<Series> {
            let x = Series::var(&["x"], &field, "x", Prec::Exact);
            Ok(x.pow(3).add(&x.pow(4).scale(t)))
        };
        let cells = equivalence_table(&field, &builder, 4).unwrap();
        assert!(cells.iter().all(|c| c.witness_found));
    }
}
