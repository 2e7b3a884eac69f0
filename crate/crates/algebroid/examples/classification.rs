//! ADE recognition and the right/contact simplicity tests across
//! characteristics, including the small-characteristic subtleties.
//!
//! Run with: cargo run --example classification

use algebroid::classify::{contact_simple, right_simple, ContactClass};
use algebroid::coeff::FieldCtx;
use algebroid::series::parse;

fn describe(field: &FieldCtx, text: &str, vars: &[&str]) {
    let f = parse(text, vars, field).unwrap();
    match right_simple(&f) {
        Ok(v) => {
            let class = match &v.class {
                ContactClass::Ade(a) => format!(
                    "{}_{}{}",
                    a.family,
                    a.index,
                    a.subtype
                        .as_deref()
                        .filter(|s| *s != "unspecified")
                        .map(|s| format!(" [{s}]"))
                        .unwrap_or_default()
                ),
                ContactClass::NotSimple { reason } => format!("not simple ({reason})"),
            };
            println!(
                "  {text:<22} {class:<18} contact-simple: {:<5}  right-simple: {}",
                v.contact_simple, v.right_simple
            );
        }
        Err(e) => println!("  {text:<22} {e}"),
    }
}

fn main() {
    let xy = &["x", "y"][..];
    println!("=== Arnold's list in characteristic zero ===\n");
    let q = FieldCtx::rationals();
    for t in ["x^2+y^3", "x^2+y^5", "x^2*y+y^3", "x^2*y+y^4", "x^3+y^4", "x^3+x*y^3", "x^3+y^5", "x^4+y^4"] {
        describe(&q, t, xy);
    }

    println!("\n=== Characteristic 5: the right-simple list is finite ===\n");
    let f5 = FieldCtx::prime(5).unwrap();
    for t in ["x^4", "x^5"] {
        describe(&f5, t, &["x"]);
    }
    for t in ["x^3+y^4", "x^3+y^5"] {
        describe(&f5, t, xy);
    }

    println!("\n=== Characteristic 3: two E6 contact normal forms ===\n");
    let f3 = FieldCtx::prime(3).unwrap();
    describe(&f3, "x^3+y^4", xy);
    describe(&f3, "x^3+x^2*y^2+y^5", xy);
    println!("  (the same second polynomial over Q:)");
    describe(&q, "x^3+x^2*y^2+y^5", xy);

    println!("\n=== Characteristic 2: only nondegenerate quadrics remain ===\n");
    let f2 = FieldCtx::prime(2).unwrap();
    describe(&f2, "x1*x2", &["x1", "x2"]);
    describe(&f2, "x1*x2+x3*x4", &["x1", "x2", "x3", "x4"]);
    describe(&f2, "x1*x2", &["x1", "x2", "x3"]); // odd ambient dimension
    match contact_simple(&parse("x^2+y^3", xy, &f2).unwrap()) {
        Err(e) => println!("  x^2+y^3 over F_2: {e}"),
        Ok(_) => unreachable!(),
    }
}
