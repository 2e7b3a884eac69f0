//! The bad-characteristic determinacy pathology: the family
//! f_t = x^p + t x^(p+1) meets infinitely many right-equivalence classes in
//! characteristic p, while the analogous family in good characteristic
//! collapses to a single class.
//!
//! Run with: cargo run --example pathology

use algebroid::coeff::{FieldCtx, FieldElem};
use algebroid::deform::{equivalence_table, pathology_family};
use algebroid::series::{Prec, Series};

fn print_table(cells: &[algebroid::deform::PathologyCell], field: &FieldCtx) {
    let elems = field.elements().unwrap();
    let n = elems.len();
    print!("      ");
    for e in &elems {
        print!("{:>5}", field.display(e));
    }
    println!();
    for (i, t) in elems.iter().enumerate() {
        print!("{:>5} ", field.display(t));
        for j in 0..n {
            let c = &cells[i * n + j];
            print!("{:>5}", if c.witness_found { "*" } else { "." });
        }
        println!();
    }
}

fn main() {
    println!("f_t = x^3 + t x^4 over F_9, right equivalence at jet degree 4");
    println!("(* = witness found; the paper's argument forces t = t')\n");
    let rep = pathology_family(3).unwrap();
    print_table(&rep.cells, &rep.field);
    println!("\nwitnesses exactly on the diagonal: {}", rep.diagonal_only);
    println!("absence of a witness over F_9 is evidence, not a proof over the closure");

    println!("\n--- control: the same family shape in good characteristic ---\n");
    println!("f_t = x^3 + t x^4 over F_5 (3 is invertible, x^3 is 3-determined)\n");
    let f5 = FieldCtx::prime(5).unwrap();
    let builder = |t: &FieldElem| -> algebroid::Result<Series> {
        let x = Series::var(&["x"], &f5, "x", Prec::Exact);
        Ok(x.pow(3).add(&x.pow(4).scale(t)))
    };
    let cells = equivalence_table(&f5, &builder, 4).unwrap();
    print_table(&cells, &f5);
    println!("\nevery pair is equivalent: the x^4 term sits above the determinacy bound");
}
