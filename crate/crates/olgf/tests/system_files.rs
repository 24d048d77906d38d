use std::io::Write;

use clap::Parser;
use olgf::cli::{run, Cli};
use olgf::input::load_system_file;
use olgf::CliError;

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".tree").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn olgf(args: &[&str]) -> (i32, String) {
    let cli = Cli::try_parse_from(std::iter::once("olgf").chain(args.iter().copied())).unwrap();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(&cli, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap() + &String::from_utf8(err).unwrap(),
    )
}

#[test]
fn b_from_a_file() {
    let f = file("b = (b, b sigma) sigma\n");
    let path = f.path().to_str().unwrap();
    let (code, out) = olgf(&["expand", "--system", path, "--word", "b", "--N", "3"]);
    assert_eq!((code, out.trim()), (0, "1 + X*Y + X^2*Y^2 + 2*X^2*Y^3"));
    let (code, _) = olgf(&[
        "rational", "--system", path, "--word", "b", "--budget", "100",
    ]);
    assert_eq!(code, 4);
}

#[test]
fn grigorchuk_group() {
    let f = file("# first Grigorchuk group\na = sigma\nb = (a, c)\nc = (a, d)\nd = (1, b)\n");
    let path = f.path().to_str().unwrap();
    let (code, out) = olgf(&["rational", "--system", path, "--word", "b"]);
    assert_eq!(code, 0, "{out}");
    let (code, out) = olgf(&[
        "expand", "--system", path, "--word", "a b", "--N", "8", "--format", "json",
    ]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let mut mass = [0u64; 9];
    let mut longest = 0;
    for t in v["terms"].as_array().unwrap() {
        let (m, n) = (t["x"].as_u64().unwrap(), t["y"].as_u64().unwrap() as usize);
        mass[n] += t["c"].as_str().unwrap().parse::<u64>().unwrap() << m;
        longest = longest.max(m);
    }
    // orbits partition each level; a b has order 16
    assert!(
        mass.iter().enumerate().all(|(n, &c)| c == 1 << n),
        "{mass:?}"
    );
    assert_eq!(longest, 4);
}

#[test]
fn malformed_files() {
    for text in [
        "a = (b, 1)\n",
        "a = (1, 1) tau\n",
        "a = (1\n",
        "a = sigma\na = sigma\n",
    ] {
        let f = file(text);
        assert!(
            matches!(load_system_file(f.path()), Err(CliError::Parse(_))),
            "{text:?}"
        );
        let (code, _) = olgf(&["expand", "--system", f.path().to_str().unwrap()]);
        assert_eq!(code, 2, "{text:?}");
    }
}
