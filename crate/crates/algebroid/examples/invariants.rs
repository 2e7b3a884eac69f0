//! Milnor and Tjurina numbers and the determinacy bounds, including the
//! characteristic-3 example where μ is infinite but τ stays finite.
//!
//! Run with: cargo run --example invariants

use algebroid::coeff::FieldCtx;
use algebroid::determinacy::{contact_bound, right_bound};
use algebroid::localalg::{milnor, tjurina, QuotientDim};
use algebroid::series::parse;

fn show(d: QuotientDim) -> String {
    match d {
        QuotientDim::Finite(v) => v.to_string(),
        QuotientDim::InfiniteOrUndetermined { .. } => "infinite-or-undetermined".into(),
    }
}

fn main() {
    println!("=== Characteristic zero ===\n");
    let q = FieldCtx::rationals();
    for text in ["x^2+y^3", "x^3+y^5", "x^2*y+y^3"] {
        let f = parse(text, &["x", "y"], &q).unwrap();
        let mu = milnor(&f, 16).unwrap();
        let tau = tjurina(&f, 16).unwrap();
        println!(
            "{text}:  mu = {}, tau = {}, right bound = {}, contact bound = {}",
            show(mu),
            show(tau),
            right_bound(&f, 16).unwrap(),
            contact_bound(&f, 16).unwrap()
        );
    }

    println!("\n=== Positive characteristic pathologies ===\n");
    // over F_3 the partial f_x of x^3 + y^4 vanishes identically, so the
    // Milnor number is infinite; the Tjurina number is still 9, and the
    // finite contact determinacy bound 2*9 - 3 + 2 = 17 applies
    let f3 = FieldCtx::prime(3).unwrap();
    let f = parse("x^3+y^4", &["x", "y"], &f3).unwrap();
    println!("f = x^3 + y^4 over F_3:");
    println!("  mu  = {}", show(milnor(&f, 21).unwrap()));
    println!("  tau = {}", show(tjurina(&f, 16).unwrap()));
    println!("  contact bound = {}", contact_bound(&f, 16).unwrap());
    println!(
        "  right bound: {}",
        right_bound(&f, 16).map(|b| b.to_string()).unwrap_or_else(|e| e.to_string())
    );

    println!("\n=== The bounds differ between characteristics ===\n");
    let f7 = FieldCtx::prime(7).unwrap();
    let g7 = parse("x^2+y^3", &["x", "y"], &f7).unwrap();
    let g0 = parse("x^2+y^3", &["x", "y"], &q).unwrap();
    println!(
        "x^2+y^3: right bound {} over F_7 (2mu - ord + 2) but {} over Q (mu + 1)",
        right_bound(&g7, 12).unwrap(),
        right_bound(&g0, 12).unwrap()
    );
}
