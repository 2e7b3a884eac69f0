//! Resolution invariants of plane branches: blowups, multiplicity
//! sequences, characteristic exponents, intersection multiplicities by two
//! independent routes, and equisingularity types.
//!
//! Run with: cargo run --example equisingularity

use algebroid::coeff::FieldCtx;
use algebroid::estype::{
    es_equal, es_type, good_characteristic, implicitize, intersection_mult,
    intersection_mult_noether, char_exponents, mult_sequence, puiseux_char_exponents,
};
use algebroid::hncurve::Parametrization;

fn main() {
    let q = FieldCtx::rationals();
    let branch = |x: &str, y: &str| Parametrization::parse(x, y, "t", &q).unwrap();

    println!("=== Multiplicity sequences and characteristic exponents ===\n");
    for (x, y) in [("t^2", "t^3"), ("t^3", "t^5"), ("t^4", "t^6+t^7"), ("t", "t^4")] {
        let p = branch(x, y);
        let seq = mult_sequence(&p).unwrap();
        let exps = char_exponents(&seq).unwrap();
        println!("({x}, {y}):  multiplicities {seq:?},  exponents {exps:?}");
    }

    println!("\n=== Puiseux cross-check in good characteristic ===\n");
    let p = branch("t^4", "t^6+t^7");
    println!(
        "gap reading after normalization: {:?}",
        puiseux_char_exponents(&p).unwrap()
    );
    let f2 = FieldCtx::prime(2).unwrap();
    let bad = Parametrization::parse("t^2", "t^3", "t", &f2).unwrap();
    println!(
        "over F_2 the cusp has no Puiseux expansion: {}",
        puiseux_char_exponents(&bad).unwrap_err()
    );
    println!(
        "good_characteristic([cusp], F_2) = {}",
        good_characteristic(std::slice::from_ref(&bad), &f2)
    );

    println!("\n=== Implicit equations ===\n");
    for (x, y) in [("t", "t^2"), ("t^2", "t^3"), ("t^3", "t^5")] {
        let f = implicitize(&branch(x, y), 12).unwrap();
        println!("({x}, {y}) satisfies {f} = 0");
    }

    println!("\n=== Intersection numbers: equation route vs Noether sum ===\n");
    let pairs = [
        (("t", "0"), ("0", "t")),
        (("t", "0"), ("t", "t^2")),
        (("t^2", "t^3"), ("t", "0")),
        (("t^2", "t^3"), ("t^2", "t^3+t^5")),
    ];
    for ((x1, y1), (x2, y2)) in pairs {
        let a = branch(x1, y1);
        let b = branch(x2, y2);
        let via_eq = intersection_mult(&a, &b).unwrap();
        let via_noether = intersection_mult_noether(&a, &b).unwrap();
        println!("i(({x1},{y1}), ({x2},{y2})) = {via_eq:?} = {via_noether} (Noether)");
    }

    println!("\n=== Equisingularity types ===\n");
    let cusp_a = es_type(&[branch("t^2", "t^3")]).unwrap();
    let cusp_b = es_type(&[branch("t^2", "t^3+t^4")]).unwrap();
    println!("two cusps equisingular: {}", es_equal(&cusp_a, &cusp_b));

    let node = es_type(&[branch("t", "0"), branch("0", "t")]).unwrap();
    let tacnode = es_type(&[branch("t", "0"), branch("t", "t^2")]).unwrap();
    println!(
        "node vs tacnode: {} (intersections {} vs {})",
        es_equal(&node, &tacnode),
        node.intersections[0][1],
        tacnode.intersections[0][1]
    );
}
