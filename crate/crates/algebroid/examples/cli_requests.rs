//! The request grammar driving the `algebroid` binary, used here through
//! the library so the outputs can be shown side by side.
//!
//! Run with: cargo run --example cli_requests
//! (the binary equivalent is e.g.
//!  cargo run --bin algebroid -- 'field: char=3; invariants; f = x^3+y^4')

use algebroid::cli;

fn show(text: &str) {
    println!("request: {text}");
    match cli::parse(text) {
        Ok(req) => {
            let (doc, code) = cli::run(&req);
            println!("exit {code}: {}", cli::to_json_string(&doc, false));
        }
        Err(e) => println!("parse error: {e}"),
    }
    println!();
}

fn main() {
    show("field: char=3; invariants; f = x^3+y^4");
    show("field: char=3; classify; f = x^3+x^2*y^2+y^5");
    show("field: char=0; estype; branch: x=t^2, y=t^3; branch: x=t, y=0");
    show("field: char=2; hn; branch: x=t^2, y=t^3");
    show("field: char=5; deform; family: x=z^2, y=z^3+t*z^4; samples=0,1,2");
    show("field: char=0; fdtest; I = x^2; vars=x,y");
    show("field: char=5; fdtest; A = [[x]]");
    // a syntax error is reported with its position
    show("field: char=4; invariants; f = x^2");
}
