//! Coefficient fields: ℚ, prime fields, finite extensions, Frobenius, and
//! root adjunction with explicit field towers.
//!
//! Run with: cargo run --example fields

use algebroid::coeff::FieldCtx;

fn main() {
    println!("=== Exact coefficient fields ===\n");

    // prime field arithmetic
    let f3 = FieldCtx::parse_spec("char=3").unwrap();
    let two = f3.from_i64(2);
    println!("F_3:  2 + 2 = {}", f3.display(&f3.add(&two, &two)));

    // an extension: F_4 = F_2[a]/(a^2 + a + 1)
    let f4 = FieldCtx::parse_spec("char=2; ext=a:a^2+a+1").unwrap();
    let a = f4.generator().unwrap();
    let a1 = f4.add(&a, &f4.one());
    println!(
        "F_4:  a * (a+1) = {}  (the minimal polynomial makes them inverse)",
        f4.display(&f4.mul(&a, &a1))
    );

    // Frobenius is additive in positive characteristic
    let frob_a = f4.frobenius(&a).unwrap();
    println!("F_4:  a^2 = {}", f4.display(&frob_a));

    // the enumeration order of a finite field is canonical
    let elems: Vec<String> = f4.elements().unwrap().iter().map(|e| f4.display(e)).collect();
    println!("F_4 elements: {}", elems.join(", "));

    println!("\n=== Root adjunction grows the tower explicitly ===\n");

    // 4 is already a square mod 5
    let f5 = FieldCtx::prime(5).unwrap();
    let (emb, r) = f5.adjoin_nth_root(&f5.from_i64(4), 2).unwrap();
    println!(
        "sqrt(4) over F_5 = {} (no extension needed: {})",
        emb.target.display(&r),
        emb.is_identity()
    );

    // 2 is not: the root lives in F_25
    let (emb, r) = f5.adjoin_nth_root(&f5.from_i64(2), 2).unwrap();
    println!(
        "sqrt(2) over F_5 = {} in F_{}",
        emb.target.display(&r),
        emb.target.order().unwrap()
    );
    let back = emb.target.mul(&r, &r);
    println!("check: ({})^2 = {}", emb.target.display(&r), emb.target.display(&back));

    // cube roots of unity need F_4 over F_2
    let f2 = FieldCtx::prime(2).unwrap();
    let (emb, zeta) = f2.adjoin_nth_root(&f2.one(), 3).unwrap();
    println!(
        "primitive cube root of 1 over F_2: {} in F_{}",
        emb.target.display(&zeta),
        emb.target.order().unwrap()
    );

    // over the rationals only exact roots succeed
    let q = FieldCtx::rationals();
    let (_, two) = q.adjoin_nth_root(&q.from_i64(8), 3).unwrap();
    println!("cbrt(8) over Q = {}", q.display(&two));
    if let Err(e) = q.adjoin_nth_root(&q.from_i64(2), 2) {
        println!("sqrt(2) over Q: {e}");
    }
}
