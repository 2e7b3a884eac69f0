//! Exact dimension computations in local rings: quotient dimensions of
//! ideals and of submodules of free modules over K[[x_1..x_n]], the Milnor
//! and Tjurina numbers, and the Tjurina number of an ideal.
//!
//! Instead of local standard bases, dimensions are found by jet-saturation
//! linear algebra: the span L_k of all monomial multiples of the generators
//! inside J^(k) is saturated when every monomial of degree exactly k lies
//! in it, and in a complete local ring m^k ⊆ I + m^(k+1) forces m^k ⊆ I.

use std::collections::BTreeMap;

use crate::coeff::FieldCtx;
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::series::{JetSpace, Mono, Series, SeriesOrd};

/// Default saturation bound for a given working precision.
pub fn default_kmax(precision: u32) -> u32 {
    (2 * precision / 3).max(2)
}

/// An ideal of the local ring given by generators of positive order.
#[derive(Clone, Debug)]
pub struct LocalIdeal {
    pub gens: Vec<Series>,
}

impl LocalIdeal {
    /// Zero generators are dropped; the remaining ones must lie in the
    /// maximal ideal.
    pub fn new(gens: Vec<Series>) -> Result<Self> {
        let gens: Vec<Series> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &gens {
            if let SeriesOrd::Finite(0) = g.ord() {
                return Err(Error::InvalidInput(
                    "ideal generator has a unit term; not contained in m".into(),
                ));
            }
        }
        Ok(LocalIdeal { gens })
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn vars(&self) -> Vec<String> {
        self.gens.first().map(|g| g.vars().to_vec()).unwrap_or_default()
    }

    pub fn as_module(&self) -> LocalSubmodule {
        LocalSubmodule {
            rank: 1,
            gens: self.gens.iter().map(|g| vec![g.clone()]).collect(),
        }
    }
}

/// A submodule of K[[x]]^rank given by tuple generators.
#[derive(Clone, Debug)]
pub struct LocalSubmodule {
    pub rank: usize,
    pub gens: Vec<Vec<Series>>,
}

impl LocalSubmodule {
    pub fn new(rank: usize, gens: Vec<Vec<Series>>) -> Result<Self> {
        for g in &gens {
            if g.len() != rank {
                return Err(Error::InvalidInput(format!(
                    "generator tuple has {} components, rank is {rank}",
                    g.len()
                )));
            }
        }
        // drop zero tuples
        let gens = gens
            .into_iter()
            .filter(|g| g.iter().any(|s| !s.is_zero()))
            .collect();
        Ok(LocalSubmodule { rank, gens })
    }

    fn template(&self) -> Option<&Series> {
        self.gens.iter().flat_map(|g| g.iter()).find(|s| !s.is_zero())
    }
}

/// Verdict of a quotient-dimension computation.  Infinite codimension and
/// "not yet saturated at k_max" are deliberately indistinguishable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientDim {
    Finite(u64),
    InfiniteOrUndetermined { last_codim: u64, k_max: u32 },
}

impl QuotientDim {
    pub fn finite(self) -> Option<u64> {
        match self {
            QuotientDim::Finite(v) => Some(v),
            QuotientDim::InfiniteOrUndetermined { .. } => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, QuotientDim::Finite(_))
    }
}

struct JetFrame {
    monos: Vec<Mono>,
    index: BTreeMap<Mono, usize>,
}

fn jet_frame(vars: &[&str], k: u32) -> JetFrame {
    let monos = JetSpace::new(vars, k).monomials();
    let index = monos
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    JetFrame { monos, index }
}

/// Span of all jet(x^α · G, k) for the module generators G, as an echelon
/// basis over the concatenated per-component monomial coordinates.
fn span_at_level(m: &LocalSubmodule, k: u32, field: &FieldCtx, vars: &[&str]) -> Result<Echelon> {
    let frame = jet_frame(vars, k);
    let dim = frame.monos.len();
    let mut ech = Echelon::new(field.clone(), m.rank * dim);
    for gen in &m.gens {
        let ord = gen
            .iter()
            .filter_map(|s| s.ord().finite())
            .min()
            .unwrap_or(u32::MAX);
        if ord > k {
            continue;
        }
        for alpha in JetSpace::new(vars, k - ord).monomials() {
            let mut row = vec![field.zero(); m.rank * dim];
            let mut nonzero = false;
            for (comp, s) in gen.iter().enumerate() {
                let shifted = s.mul_monomial(&alpha.0, &field.one());
                let jet = shifted.jet(k)?;
                for (mono, c) in jet.terms() {
                    let idx = comp * dim + frame.index[mono];
                    row[idx] = c.clone();
                    nonzero = true;
                }
            }
            if nonzero {
                ech.insert(row);
            }
        }
    }
    Ok(ech)
}

/// Is every monomial tuple of degree exactly k in the span?
fn saturated_at(ech: &Echelon, m: &LocalSubmodule, k: u32, field: &FieldCtx, vars: &[&str]) -> bool {
    let frame = jet_frame(vars, k);
    let dim = frame.monos.len();
    for comp in 0..m.rank {
        for (i, mono) in frame.monos.iter().enumerate() {
            if mono.deg() != k {
                continue;
            }
            let mut unit = vec![field.zero(); m.rank * dim];
            unit[comp * dim + i] = field.one();
            if !ech.contains(&unit) {
                return false;
            }
        }
    }
    true
}

/// dim_K of K[[x]]^rank / M by saturation up to k_max.
pub fn quotient_dim_module(m: &LocalSubmodule, k_max: u32) -> Result<QuotientDim> {
    let template = match m.template() {
        Some(t) => t.clone(),
        None => {
            // zero module: infinite codimension unless the rank is zero
            return Ok(QuotientDim::InfiniteOrUndetermined {
                last_codim: 0,
                k_max,
            });
        }
    };
    let field = template.field().clone();
    let vars_owned = template.vars().to_vec();
    let vars: Vec<&str> = vars_owned.iter().map(|s| s.as_str()).collect();
    let mut last_codim = 0u64;
    for k in 1..=k_max {
        let ech = span_at_level(m, k, &field, &vars)?;
        let total = m.rank as u64 * JetSpace::new(&vars, k).dim();
        last_codim = total - ech.rank() as u64;
        if saturated_at(&ech, m, k, &field, &vars) {
            // m^k is contained in the module: the quotient equals the
            // level-(k-1) quotient
            if k == 1 {
                let ech0 = span_at_level(m, 0, &field, &vars)?;
                return Ok(QuotientDim::Finite(m.rank as u64 - ech0.rank() as u64));
            }
            let ech_prev = span_at_level(m, k - 1, &field, &vars)?;
            let total_prev = m.rank as u64 * JetSpace::new(&vars, k - 1).dim();
            return Ok(QuotientDim::Finite(total_prev - ech_prev.rank() as u64));
        }
    }
    Ok(QuotientDim::InfiniteOrUndetermined {
        last_codim,
        k_max,
    })
}

/// dim_K of K[[x]]/I by saturation up to k_max.
pub fn quotient_dim(ideal: &LocalIdeal, k_max: u32) -> Result<QuotientDim> {
    if ideal.is_zero() {
        return Ok(QuotientDim::InfiniteOrUndetermined {
            last_codim: 0,
            k_max,
        });
    }
    quotient_dim_module(&ideal.as_module(), k_max)
}

/// Rank of the span of all jet(x^α · G, k) inside J^(k)^rank; the dimension
/// of the jet-level image of a generating system.
pub fn jet_span_rank(m: &LocalSubmodule, k: u32) -> Result<u64> {
    let template = match m.template() {
        Some(t) => t.clone(),
        None => return Ok(0),
    };
    let field = template.field().clone();
    let vars_owned = template.vars().to_vec();
    let vars: Vec<&str> = vars_owned.iter().map(|s| s.as_str()).collect();
    let ech = span_at_level(m, k, &field, &vars)?;
    Ok(ech.rank() as u64)
}

/// The ideal of all partial derivatives of f.
pub fn jacobian_ideal(f: &Series) -> Result<LocalIdeal> {
    let gens: Vec<Series> = f
        .vars()
        .to_vec()
        .iter()
        .map(|v| f.derivative(v))
        .collect();
    LocalIdeal::new(gens)
}

/// Milnor number μ(f) = dim K[[x]]/⟨∂f/∂x_1, ..., ∂f/∂x_n⟩.  Requires
/// f ∈ m²; in characteristic p the value is attached to the representative
/// f, not the ideal.
pub fn milnor(f: &Series, k_max: u32) -> Result<QuotientDim> {
    require_in_m2(f)?;
    quotient_dim(&jacobian_ideal(f)?, k_max)
}

/// Tjurina number τ(f) = dim K[[x]]/⟨f, ∂f/∂x_1, ..., ∂f/∂x_n⟩.
pub fn tjurina(f: &Series, k_max: u32) -> Result<QuotientDim> {
    require_in_m2(f)?;
    let mut gens = jacobian_ideal(f)?.gens;
    gens.push(f.clone());
    quotient_dim(&LocalIdeal::new(gens)?, k_max)
}

fn require_in_m2(f: &Series) -> Result<()> {
    match f.ord() {
        SeriesOrd::Finite(o) if o >= 2 => Ok(()),
        SeriesOrd::Infinite { .. } => Ok(()),
        other => Err(Error::InvalidInput(format!(
            "series of order {other:?} is not in m^2"
        ))),
    }
}

/// Best-effort minimality check: generator j is flagged redundant when its
/// k-jet lies in the span of the other generators plus m·I at jet level k.
pub fn check_minimal_generators(ideal: &LocalIdeal, k: u32) -> Result<()> {
    let gens = &ideal.gens;
    if gens.len() <= 1 {
        return Ok(());
    }
    let template = &gens[0];
    let field = template.field().clone();
    let vars_owned = template.vars().to_vec();
    let vars: Vec<&str> = vars_owned.iter().map(|s| s.as_str()).collect();
    let frame = jet_frame(&vars, k);
    let dim = frame.monos.len();
    for j in 0..gens.len() {
        let mut ech = Echelon::new(field.clone(), dim);
        for (i, g) in gens.iter().enumerate() {
            let ord = g.ord().finite().unwrap_or(u32::MAX);
            if ord > k {
                continue;
            }
            for alpha in JetSpace::new(&vars, k - ord).monomials() {
                if i == j && alpha.deg() == 0 {
                    continue; // only m·g_j allowed for the candidate itself
                }
                let jet = g.mul_monomial(&alpha.0, &field.one()).jet(k)?;
                let mut row = vec![field.zero(); dim];
                for (mono, c) in jet.terms() {
                    row[frame.index[mono]] = c.clone();
                }
                ech.insert(row);
            }
        }
        let jet_j = gens[j].jet(k)?;
        let mut row = vec![field.zero(); dim];
        for (mono, c) in jet_j.terms() {
            row[frame.index[mono]] = c.clone();
        }
        if ech.contains(&row) {
            return Err(Error::NotMinimalGenerators(j));
        }
    }
    Ok(())
}

/// Tjurina number of an ideal I = ⟨f_1..f_r⟩ with r ≤ n the minimal number
/// of generators: dim_K K[[x]]^r / (I·K[[x]]^r + ⟨∂f/∂x_1, ..., ∂f/∂x_n⟩)
/// with ∂f/∂x_i the column of the i-th partials.
pub fn tjurina_ideal(ideal: &LocalIdeal, k_max: u32) -> Result<QuotientDim> {
    let r = ideal.gens.len();
    if r == 0 {
        return Ok(QuotientDim::InfiniteOrUndetermined {
            last_codim: 0,
            k_max,
        });
    }
    let template = &ideal.gens[0];
    let n = template.nvars();
    if r > n {
        return Err(Error::InvalidInput(format!(
            "tjurina_ideal needs r <= n, got r = {r}, n = {n}"
        )));
    }
    check_minimal_generators(ideal, 6.min(k_max))?;
    let mut gens: Vec<Vec<Series>> = vec![];
    // I · K[[x]]^r
    for f in &ideal.gens {
        for l in 0..r {
            let mut tuple = vec![f.zero_like(); r];
            tuple[l] = f.clone();
            gens.push(tuple);
        }
    }
    // partial-derivative columns
    for v in template.vars().to_vec() {
        let tuple: Vec<Series> = ideal.gens.iter().map(|f| f.derivative(&v)).collect();
        gens.push(tuple);
    }
    quotient_dim_module(&LocalSubmodule::new(r, gens)?, k_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{parse, Prec};

    fn q() -> FieldCtx {
        FieldCtx::rationals()
    }

    fn ideal(gens: &[&str], vars: &[&str], field: &FieldCtx) -> LocalIdeal {
        LocalIdeal::new(gens.iter().map(|g| parse(g, vars, field).unwrap()).collect()).unwrap()
    }

    #[test]
    fn residue_field_and_monomial_counts() {
        let i = ideal(&["x", "y"], &["x", "y"], &q());
        assert_eq!(quotient_dim(&i, 10).unwrap(), QuotientDim::Finite(1));
        let i = ideal(&["x^2", "y^2"], &["x", "y"], &q());
        assert_eq!(quotient_dim(&i, 10).unwrap(), QuotientDim::Finite(4));
        let f3 = FieldCtx::prime(3).unwrap();
        let i = ideal(&["x^3+y^4", "y^3"], &["x", "y"], &f3);
        assert_eq!(quotient_dim(&i, 12).unwrap(), QuotientDim::Finite(9));
    }

    #[test]
    fn module_examples() {
        // rank 1 reduces to the ideal case
        let m = LocalSubmodule::new(
            1,
            vec![
                vec![parse("x", &["x", "y"], &q()).unwrap()],
                vec![parse("y", &["x", "y"], &q()).unwrap()],
            ],
        )
        .unwrap();
        assert_eq!(quotient_dim_module(&m, 8).unwrap(), QuotientDim::Finite(1));

        // rank 2: {(x,0),(0,y),(y^2,0),(0,x^2)}
        let vars = ["x", "y"];
        let z = Series::zero(&vars, &q(), Prec::Exact);
        let m = LocalSubmodule::new(
            2,
            vec![
                vec![parse("x", &vars, &q()).unwrap(), z.clone()],
                vec![z.clone(), parse("y", &vars, &q()).unwrap()],
                vec![parse("y^2", &vars, &q()).unwrap(), z.clone()],
                vec![z.clone(), parse("x^2", &vars, &q()).unwrap()],
            ],
        )
        .unwrap();
        assert_eq!(quotient_dim_module(&m, 8).unwrap(), QuotientDim::Finite(4));

        // full module
        let one = parse("1", &vars, &q()).unwrap();
        let m = LocalSubmodule::new(
            2,
            vec![vec![one.clone(), z.clone()], vec![z.clone(), one.clone()]],
        )
        .unwrap();
        assert_eq!(quotient_dim_module(&m, 8).unwrap(), QuotientDim::Finite(0));
    }

    #[test]
    fn milnor_numbers() {
        let f = parse("x^2+y^3", &["x", "y"], &q()).unwrap();
        assert_eq!(milnor(&f, 12).unwrap(), QuotientDim::Finite(2));
        let f = parse("x^3+y^5", &["x", "y"], &q()).unwrap();
        assert_eq!(milnor(&f, 16).unwrap(), QuotientDim::Finite(8));
        // char 3: f_x = 0, the partials ideal is ⟨y^3⟩ of infinite codimension
        let f3 = FieldCtx::prime(3).unwrap();
        let f = parse("x^3+y^4", &["x", "y"], &f3).unwrap();
        assert!(matches!(
            milnor(&f, 10).unwrap(),
            QuotientDim::InfiniteOrUndetermined { .. }
        ));
    }

    #[test]
    fn tjurina_numbers() {
        let f3 = FieldCtx::prime(3).unwrap();
        let f = parse("x^3+y^4", &["x", "y"], &f3).unwrap();
        assert_eq!(tjurina(&f, 12).unwrap(), QuotientDim::Finite(9));
        let f = parse("x^2+y^3", &["x", "y"], &q()).unwrap();
        assert_eq!(tjurina(&f, 12).unwrap(), QuotientDim::Finite(2));
    }

    #[test]
    fn tjurina_of_ideal() {
        let i = ideal(&["x^2", "y^2"], &["x", "y"], &q());
        assert_eq!(tjurina_ideal(&i, 10).unwrap(), QuotientDim::Finite(4));
    }

    #[test]
    fn minimality_check_flags_redundant_generator() {
        let i = LocalIdeal::new(vec![
            parse("x", &["x", "y"], &q()).unwrap(),
            parse("y", &["x", "y"], &q()).unwrap(),
            parse("x+y^2", &["x", "y"], &q()).unwrap(),
        ])
        .unwrap();
        assert!(matches!(
            check_minimal_generators(&i, 6),
            Err(Error::NotMinimalGenerators(_))
        ));
        let ok = ideal(&["x^2", "y^2"], &["x", "y"], &q());
        assert!(check_minimal_generators(&ok, 6).is_ok());
    }

    #[test]
    fn generator_order_and_redundancy_invariance() {
        let a = ideal(&["x^2+y^3", "x*y"], &["x", "y"], &q());
        let b = ideal(&["x*y", "x^2+y^3"], &["x", "y"], &q());
        let with_redundant = ideal(&["x^2+y^3", "x*y", "x^3+x*y^2"], &["x", "y"], &q());
        let da = quotient_dim(&a, 12).unwrap();
        assert_eq!(da, quotient_dim(&b, 12).unwrap());
        assert_eq!(da, quotient_dim(&with_redundant, 12).unwrap());
    }

    #[test]
    fn monomial_ideal_oracle_small() {
        let i = ideal(&["x^3", "y^2"], &["x", "y"], &q());
        assert_eq!(quotient_dim(&i, 12).unwrap(), QuotientDim::Finite(6));
        // staircase count by brute force for a mixed monomial ideal
        let gens = [(4u32, 0u32), (2, 1), (0, 3)];
        let mut count = 0u64;
        for a in 0..10u32 {
            for b in 0..10u32 {
                if !gens.iter().any(|&(ga, gb)| a >= ga && b >= gb) {
                    count += 1;
                }
            }
        }
        let i = ideal(&["x^4", "x^2*y", "y^3"], &["x", "y"], &q());
        assert_eq!(quotient_dim(&i, 14).unwrap(), QuotientDim::Finite(count));
    }

    #[test]
    fn zero_ideal_is_undetermined() {
        let z = Series::zero(&["x", "y"], &q(), Prec::Exact);
        let i = LocalIdeal::new(vec![z]).unwrap();
        assert!(matches!(
            quotient_dim(&i, 6).unwrap(),
            QuotientDim::InfiniteOrUndetermined { .. }
        ));
    }

    #[test]
    fn tau_bounded_by_mu_in_char_zero() {
        for text in ["x^2+y^3", "x^3+y^4", "x^3+y^5", "x^2*y+y^4", "x^4+y^5+x^2*y^3"] {
            let f = parse(text, &["x", "y"], &q()).unwrap();
            let mu = milnor(&f, 20).unwrap().finite().unwrap();
            let tau = tjurina(&f, 20).unwrap().finite().unwrap();
            assert!(tau <= mu, "{text}: tau {tau} > mu {mu}");
        }
    }

    #[test]
    fn invariance_under_jet_truncation_above_bound() {
        // milnor(f) = milnor(jet(f, b)) for b at the determinacy bound
        let f = parse("x^2+y^3+y^7", &["x", "y"], &q()).unwrap();
        let mu = milnor(&f, 12).unwrap().finite().unwrap();
        let b = (mu + 1) as u32; // char-0 right bound
        let g = f.jet(b).unwrap();
        assert_eq!(milnor(&g, 12).unwrap(), QuotientDim::Finite(mu));
    }
}
