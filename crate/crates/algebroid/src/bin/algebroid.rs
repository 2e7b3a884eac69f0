//! Thin command-line entry point: reads one request (argument, file or
//! stdin), runs it through the library, prints JSON, and exits with
//! 0 (success), 1 (error) or 2 (undetermined mathematical verdict).

use std::io::Read;
use std::process::ExitCode;

use algebroid::cli;

const USAGE: &str = "usage: algebroid [REQUEST | @FILE | -] [flags]

The request grammar is `field: <spec>; <command>; <payload>; [options]`,
for example:

  algebroid 'field: char=3; invariants; f = x^3+y^4'
  algebroid 'field: char=0; estype; branch: x=t^2, y=t^3; branch: x=t, y=0'
  algebroid 'field: char=5; deform; family: x=z^2, y=z^3+t*z^4; samples=0,1,2'

Flags (override request options):
  --field SPEC       coefficient field, e.g. \"char=5\" or \"char=2; ext=a:a^2+a+1\"
  --precision N      working precision (default 32)
  --kmax K           saturation bound for quotient dimensions
  --jet K            jet level for tangent-image dimensions
  --seed S           seed recorded for randomized reports
  --samples LIST     comma-separated sample points for deform
  --pretty           pretty-print the JSON output
  --json             single-line JSON output (default)
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(args) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
    }
}

fn run(args: Vec<String>) -> Result<ExitCode, String> {
    let mut request_text: Option<String> = None;
    let mut pretty = false;
    let mut field_override: Option<String> = None;
    let mut option_overrides: Vec<(String, String)> = vec![];
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        match arg.as_str() {
            "--help" | "-h" => {
                println!("{USAGE}");
                return Ok(ExitCode::from(0));
            }
            "--pretty" => pretty = true,
            "--json" => pretty = false,
            "--field" => {
                field_override = Some(iter.next().ok_or("--field needs a value")?);
            }
            "--precision" | "--kmax" | "--jet" | "--seed" | "--samples" => {
                let key = arg.trim_start_matches("--").to_string();
                let value = iter.next().ok_or_else(|| format!("{arg} needs a value"))?;
                option_overrides.push((key, value));
            }
            "-" => {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| format!("reading stdin: {e}"))?;
                request_text = Some(buf);
            }
            other if other.starts_with('@') => {
                let path = &other[1..];
                let buf =
                    std::fs::read_to_string(path).map_err(|e| format!("reading {path}: {e}"))?;
                request_text = Some(buf);
            }
            other if other.starts_with("--") => {
                return Err(format!("unknown flag `{other}`\n\n{USAGE}"));
            }
            other => {
                request_text = Some(other.to_string());
            }
        }
    }
    let Some(mut text) = request_text else {
        return Err(USAGE.to_string());
    };
    text = text.trim().to_string();
    if let Some(spec) = field_override {
        // replace the field segment (and a following ext= segment, which
        // belongs to the extension grammar) with the flag value
        let mut rest = text.clone();
        if rest.trim_start().starts_with("field:") {
            if let Some(i) = rest.find(';') {
                rest = rest[i + 1..].to_string();
            }
            if rest.trim_start().starts_with("ext=") {
                if let Some(i) = rest.find(';') {
                    rest = rest[i + 1..].to_string();
                }
            }
        }
        text = format!("field: {spec}; {}", rest.trim_start());
    }
    match cli::parse(&text) {
        Ok(mut req) => {
            for (k, v) in option_overrides {
                if let Err(e) = cli::apply_option(&mut req.options, &k, &v) {
                    return Err(e.to_string());
                }
            }
            let (doc, code) = cli::run(&req);
            println!("{}", cli::to_json_string(&doc, pretty));
            Ok(ExitCode::from(code as u8))
        }
        Err(e) => {
            let doc = serde_json::json!({
                "schemaVersion": 1,
                "error": {"code": e.code(), "message": e.to_string()},
            });
            println!("{}", cli::to_json_string(&doc, pretty));
            Ok(ExitCode::from(1))
        }
    }
}
