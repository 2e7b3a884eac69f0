//! Hamburger-Noether expansions: the characteristic-free substitute for
//! Puiseux expansions, their back-substitution, and complex models.
//!
//! Run with: cargo run --example hn_expansion

use algebroid::cli::hn_display;
use algebroid::coeff::FieldCtx;
use algebroid::hncurve::{complex_model, default_value_map, hn_expand, hn_to_param, Parametrization};

fn show(label: &str, p: &Parametrization) {
    println!("--- {label}: x = {}, y = {} ---", p.x, p.y);
    let h = hn_expand(p).unwrap();
    for line in hn_display(&h, p.field()) {
        println!("    {line}");
    }
    let back = hn_to_param(&h, 12).unwrap();
    println!("    back-substituted: x = {}, y = {}", back.x, back.y);
    println!();
}

fn main() {
    let q = FieldCtx::rationals();
    println!("=== Division chains over Q ===\n");
    show("cusp", &Parametrization::parse("t^2", "t^3", "t", &q).unwrap());
    show("smooth branch", &Parametrization::parse("t", "t^2", "t", &q).unwrap());
    show(
        "deeper tangency",
        &Parametrization::parse("t^2", "t^6+t^7", "t", &q).unwrap(),
    );
    show(
        "two Puiseux pairs",
        &Parametrization::parse("t^4", "t^6+t^7", "t", &q).unwrap(),
    );

    println!("=== The expansion works where Puiseux fails ===\n");
    // characteristic 2 divides the multiplicity of the cusp, so no Puiseux
    // expansion exists; the division chain is unaffected
    let f2 = FieldCtx::prime(2).unwrap();
    let cusp2 = Parametrization::parse("t^2", "t^3", "t", &f2).unwrap();
    show("cusp over F_2", &cusp2);

    println!("=== Complex model ===\n");
    // replace the coefficients through a zero-preserving value map into Q;
    // the characteristic exponents are unchanged (Campillo)
    let h = hn_expand(&cusp2).unwrap();
    let model = complex_model(&h, &default_value_map(&f2)).unwrap();
    println!("model of the F_2 cusp lives over {:?}", model.field());
    let model_branch = hn_to_param(&model, 16).unwrap();
    let exps = algebroid::estype::char_exponents(
        &algebroid::estype::mult_sequence(&model_branch).unwrap(),
    )
    .unwrap();
    println!("characteristic exponents of the model: {exps:?} (same as the source)");
}
