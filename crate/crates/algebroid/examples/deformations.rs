//! Families of parametrizations: elimination of the uniformizer to a
//! deformation of the equation, specialization, and equisingularity
//! sampling along the parameters.
//!
//! Run with: cargo run --example deformations

use algebroid::coeff::FieldCtx;
use algebroid::deform::{elimination_contract_holds, eliminate_parameter, es_constancy_sample, ParamFamily};

fn main() {
    let f5 = FieldCtx::prime(5).unwrap();

    println!("=== Elimination of the uniformizer ===\n");
    let fam = ParamFamily::parse("z^2", "z^3+t*z^5", &["z", "t"], &f5).unwrap();
    let eq = eliminate_parameter(&fam, 12).unwrap();
    println!("X = z^2, Y = z^3 + t z^5  over F_5");
    println!("eliminated equation F(x, y, t) = {eq}");
    for v in [0i64, 1, 2] {
        let ok = elimination_contract_holds(&fam, &[f5.from_i64(v)], 8).unwrap();
        println!("  specialization contract at t = {v}: {ok}");
    }

    println!("\n=== Equisingularity sampling ===\n");
    // a family with constant es-type: the t z^4 term never disturbs the
    // (2, 3) cusp
    let fam = ParamFamily::parse("z^2", "z^3+t*z^4", &["z", "t"], &f5).unwrap();
    let samples: Vec<Vec<_>> = (0..5).map(|i| vec![f5.from_i64(i)]).collect();
    let rep = es_constancy_sample(&fam, &samples).unwrap();
    println!("X = z^2, Y = z^3 + t z^4:");
    println!("  special fiber exponents {:?}", rep.special.char_exps);
    println!("  constant over the samples: {}", rep.constant);

    // a jumping family: at t = 0 the branch is (2, 5), away from it (2, 3)
    let fam = ParamFamily::parse("z^2", "z^5+t*z^3", &["z", "t"], &f5).unwrap();
    let rep = es_constancy_sample(&fam, &[vec![f5.zero()], vec![f5.one()]]).unwrap();
    println!("\nX = z^2, Y = z^5 + t z^3:");
    for (pt, es) in &rep.fibers {
        println!(
            "  t = {}: exponents {:?}",
            f5.display(&pt[0]),
            es.char_exps
        );
    }
    println!("  special fiber {:?};  constant: {}", rep.special.char_exps, rep.constant);
    println!("  (a sampling verdict, not a proof over the whole base)");

    println!("\n=== Degenerate fibers are rejected ===\n");
    match ParamFamily::parse("z^2", "t*z^3", &["z", "t"], &f5) {
        Err(e) => println!("X = z^2, Y = t z^3: {e}"),
        Ok(_) => unreachable!(),
    }
}
