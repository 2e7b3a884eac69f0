//! Truncated power series: precision tracking, jets, composition,
//! compositional inverse, and Sylvester resultants.
//!
//! Run with: cargo run --example series_arithmetic

use algebroid::coeff::FieldCtx;
use algebroid::series::{parse, resultant, Prec, Series};

fn main() {
    let q = FieldCtx::rationals();
    let f3 = FieldCtx::prime(3).unwrap();

    println!("=== Orders and derivatives ===\n");
    let f = parse("x^3+y^4", &["x", "y"], &q).unwrap();
    println!("f = {f},  ord(f) = {:?}", f.ord());
    let f3f = parse("x^3+y^4", &["x", "y"], &f3).unwrap();
    println!("over F_3: df/dx = {}  (the cube term differentiates to zero)", f3f.derivative("x"));
    println!("over F_3: df/dy = {}", f3f.derivative("y"));

    println!("\n=== Truncated products track precision ===\n");
    let a = parse("1+t", &["t"], &q).unwrap().with_prec(Prec::Finite(5));
    let b = parse("1-t", &["t"], &q).unwrap().with_prec(Prec::Finite(5));
    println!("(1+t)(1-t) at precision 5 = {}", a.mul(&b));

    println!("\n=== Composition and compositional inverse ===\n");
    let parab = parse("y-x^2", &["x", "y"], &q).unwrap();
    let t = parse("t", &["t"], &q).unwrap();
    let t2 = parse("t^2", &["t"], &q).unwrap();
    println!("(y - x^2) ∘ (t, t^2) = {}", parab.compose(&[t, t2]).unwrap());

    let u = parse("t+t^2", &["t"], &q).unwrap().with_prec(Prec::Finite(7));
    let v = u.invert_series().unwrap();
    println!("inverse of t + t^2:  v = {v}");
    println!("check u(v(t)) = {}", u.compose(&[v]).unwrap());

    println!("\n=== Resultants eliminate a variable ===\n");
    // Res_z(x - z^2, y - z^3) recovers the cusp equation
    let vars = ["x", "y"];
    let x = parse("x", &vars, &q).unwrap();
    let y = parse("y", &vars, &q).unwrap();
    let one = parse("1", &vars, &q).unwrap();
    let zero = Series::zero(&vars, &q, Prec::Exact);
    let p = [x, zero.clone(), one.neg()]; // x - z^2
    let qq = [y, zero.clone(), zero, one.neg()]; // y - z^3
    let res = resultant(&p, &qq, Prec::Exact).unwrap();
    println!("Res_z(x - z^2, y - z^3) = {res}");

    println!("\n=== Jets ===\n");
    let f = parse("x^3+y^4", &["x", "y"], &q).unwrap();
    println!("jet(f, 3) = {}", f.jet(3).unwrap());
    println!("jet(t^5, 4) = {}", parse("t^5", &["t"], &q).unwrap().jet(4).unwrap());
}
