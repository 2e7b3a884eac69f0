//! Tangent images of the right, contact and matrix group actions,
//! jet-level dimensions, finite-determinacy tests for ideals and matrices,
//! and the brute-force jet equivalence search.
//!
//! Run with: cargo run --example determinacy

use algebroid::coeff::FieldCtx;
use algebroid::determinacy::{
    codim_tangent_image, fd_test_ideal, fd_test_matrix, jet_equiv_bruteforce, jet_image_dim,
    tangent_image, tangent_image_matrix, EquivSearch, Flavor, MatrixOfSeries,
};
use algebroid::localalg::LocalIdeal;
use algebroid::series::parse;

fn main() {
    println!("=== The tangent image of the contact orbit ===\n");
    // over F_3 with f = x^3 + y^4: f_x = 0, f_y = y^3, so the generating
    // system is {f, x y^3, y^4}
    let f3 = FieldCtx::prime(3).unwrap();
    let f = parse("x^3+y^4", &["x", "y"], &f3).unwrap();
    let t = tangent_image(&f, Flavor::Contact).unwrap();
    println!("generators of T~ for x^3+y^4 over F_3: {} tuples", t.module.gens.len());
    for k in 0..=6 {
        println!("  dim T~(K^({k}) f) = {}", jet_image_dim(&t, k).unwrap());
    }
    println!("  codimension: {:?}", codim_tangent_image(&t, 14).unwrap());

    println!("\n=== Finite determinacy of ideals ===\n");
    let q = FieldCtx::rationals();
    let cases = [("x*y", "node"), ("y^2-x^3", "cusp"), ("x^2", "double line")];
    for (text, label) in cases {
        let ideal = LocalIdeal::new(vec![parse(text, &["x", "y"], &q).unwrap()]).unwrap();
        println!("<{text}> ({label}): {:?}", fd_test_ideal(&ideal, 14).unwrap());
    }

    println!("\n=== Finite determinacy of matrices ===\n");
    let a = MatrixOfSeries::new(1, 1, vec![parse("x", &["x"], &q).unwrap()]).unwrap();
    println!("[x] (1x1): {:?}", fd_test_matrix(&a, 10).unwrap());
    let a = MatrixOfSeries::new(1, 1, vec![parse("x^2", &["x", "y"], &q).unwrap()]).unwrap();
    println!("[x^2] in two variables: {:?}", fd_test_matrix(&a, 10).unwrap());
    // a genuine 2x1 column
    let col = MatrixOfSeries::new(
        2,
        1,
        vec![
            parse("x^2", &["x", "y"], &q).unwrap(),
            parse("y^2", &["x", "y"], &q).unwrap(),
        ],
    )
    .unwrap();
    println!("[x^2; y^2] (2x1): {:?}", fd_test_matrix(&col, 12).unwrap());
    let m = tangent_image_matrix(&col).unwrap();
    println!("  its tangent image has {} generators", m.module.gens.len());

    println!("\n=== Brute-force jet equivalence over a finite field ===\n");
    let f5 = FieldCtx::prime(5).unwrap();
    let f0 = parse("x^3", &["x"], &f5).unwrap();
    let g = parse("x^3+x^4", &["x"], &f5).unwrap();
    match jet_equiv_bruteforce(&f0, &g, Flavor::Right, 4).unwrap() {
        EquivSearch::Witness(w) => println!("x^3 ~ x^3+x^4 over F_5 via phi(x) = {}", w.phi[0]),
        EquivSearch::NotFoundAtThisScale => println!("no witness found"),
    }

    // in characteristic 3 the analogous pair is NOT right equivalent
    let f9 = FieldCtx::parse_spec("char=3; ext=a:a^2+1").unwrap();
    let f = parse("x^3+x^4", &["x"], &f9).unwrap();
    let g = parse("x^3+2*x^4", &["x"], &f9).unwrap();
    match jet_equiv_bruteforce(&f, &g, Flavor::Right, 4).unwrap() {
        EquivSearch::Witness(_) => println!("unexpected witness"),
        EquivSearch::NotFoundAtThisScale => {
            println!("x^3+x^4 vs x^3+2x^4 over F_9: no witness at this scale");
            println!("(absence over F_9 is evidence, not a proof over the closure)");
        }
    }
}
