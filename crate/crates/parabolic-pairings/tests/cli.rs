//! End-to-end runs of the `pairings` binary against the committed golden reports.
//! Set `PAIRINGS_UPDATE_GOLDEN=1` to rewrite the corpus after an intended change.

use std::path::PathBuf;
use std::process::Command;

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    code: i32,
    /// Substrings checked independently of the frozen file.
    expect: &'static [&'static str],
}

const CASES: &[Case] = &[
    Case { name: "roots_a3.txt", args: &["roots", "--type", "A3"], code: 0, expect: &["positive roots: 6", "Weyl group order: 24"] },
    Case { name: "roots_b2.json", args: &["--format", "json", "roots", "--type", "B2"], code: 0, expect: &["\"weyl_order\": \"8\""] },
    Case { name: "hasse_d4.txt", args: &["hasse", "--type", "D4", "--crossed", "1"], code: 0, expect: &["8 elements, maximal length 6"] },
    Case { name: "grading_cr_a4.txt", args: &["grading", "--type", "A4", "--crossed", "1,4"], code: 0, expect: &["k0 = 2", "dim G/P = 7"] },
    Case { name: "grading_d5.txt", args: &["grading", "--type", "D5", "--crossed", "1"], code: 0, expect: &["k0 = 1", "dim 8"] },
    Case { name: "kostant_a3.txt", args: &["kostant", "--weight", "A3: x(2) o(0) o(0)"], code: 0, expect: &["H^1: A3: x(-4) o(3) o(0)"] },
    Case { name: "kostant_a2_borel.txt", args: &["kostant", "--weight", "A2: x(0) x(0)", "--degree", "3"], code: 0, expect: &["H^3: A2: x(-2) x(-2)"] },
    Case {
        name: "central_char_pair.txt",
        args: &["central-char", "--weight", "4|4,5,7", "--compare", "6|3,5,6"],
        code: 0,
        expect: &["|lambda+rho|^2 = 3/4", "same central character: false (orbit key), false (dominant reflection)"],
    },
    Case { name: "central_char_dynkin.json", args: &["--format", "json", "central-char", "--weight", "A3: x(-1) o(0) o(1)"], code: 0, expect: &["\"shifted_norm\": \"3/4\""] },
    Case { name: "gamma_m1.txt", args: &["gamma", "--order", "1", "--q", "q", "--q-prime", "q'"], code: 0, expect: &["gamma_{1,0} = q\n", "gamma_{1,1} = -q'\n"] },
    Case {
        name: "gamma_m2_wv.txt",
        args: &["gamma", "--order", "2", "--q", "w", "--q-prime", "v"],
        code: 0,
        expect: &["gamma_{2,0} = w(w-1)\n", "gamma_{2,1} = -2(w-1)(v-1)\n", "gamma_{2,2} = v(v-1)\n"],
    },
    Case { name: "gamma_m2_wv.tex", args: &["--format", "latex", "gamma", "--order", "2", "--q", "w", "--q-prime", "v"], code: 0, expect: &["&= -2(w-1)(v-1)"] },
    Case { name: "gamma_m2_wv.json", args: &["--format", "json", "gamma", "--order", "2", "--q", "w", "--q-prime", "v"], code: 0, expect: &["\"w(w-1)\""] },
    Case {
        name: "gamma_m2_degenerate.txt",
        args: &["gamma", "--order", "2", "--q", "1", "--q-prime", "1"],
        code: 2,
        expect: &["solution dimension: 2", "basis 0: (1, 0, 0)", "basis 1: (0, 0, 1)"],
    },
    Case {
        name: "classify_first_projective.txt",
        args: &["classify-first", "--v", "A3: x(w) o(0) o(0)", "--w", "A3: x(1+v) o(0) o(1)", "--target", "trivial"],
        code: 0,
        expect: &["multiplicity x = 1", "coefficients: (v+4, -w)", "degenerate at w = 0", "degenerate at v = -4"],
    },
    Case {
        name: "classify_first_two_parameters.txt",
        args: &["classify-first", "--v", "A3: x(v+1) o(0) o(1)", "--w", "A3: x(w-2) o(1) o(0)", "--target", "1,0"],
        code: 0,
        expect: &["multiplicity x = 2"],
    },
    Case {
        name: "classify_first_conformal.txt",
        args: &["classify-first", "--v", "D4: x(v) o(1) o(0) o(0)", "--w", "D4: x(w) o(0) o(0) o(0)", "--target", "trivial"],
        code: 0,
        expect: &["degenerate at v = -6"],
    },
    Case { name: "pairing_formula_m2.tex", args: &["--format", "latex", "pairing-formula", "--order", "2"], code: 0, expect: &["qq'(q+q'-2)"] },
    Case { name: "pairing_formula_m2.txt", args: &["pairing-formula", "--order", "2"], code: 0, expect: &["[qq'(q+q'-2)]"] },
    Case { name: "pairing_formula_m3.tex", args: &["--format", "latex", "pairing-formula", "--order", "3"], code: 0, expect: &["q(q-2)(q'-1)(2q+3q'-8)"] },
    Case { name: "pairing_formula_m3.txt", args: &["pairing-formula", "--order", "3"], code: 0, expect: &["[q(q-2)(q'-1)(2q+3q'-8)]"] },
    Case { name: "ricci_2.tex", args: &["--format", "latex", "ricci", "--order", "2"], code: 0, expect: &["\\mathcal{D}_{2}s=\\nabla^{2}s+q\\Gamma s"] },
    Case { name: "ricci_3.tex", args: &["--format", "latex", "ricci", "--order", "3"], code: 0, expect: &[] },
    Case { name: "ricci_4.tex", args: &["--format", "latex", "ricci", "--order", "4"], code: 0, expect: &[] },
    Case { name: "ricci_5.tex", args: &["--format", "latex", "ricci", "--order", "5"], code: 0, expect: &[] },
    Case { name: "ricci_6.tex", args: &["--format", "latex", "ricci", "--order", "6"], code: 0, expect: &[] },
    Case { name: "ricci_6.txt", args: &["ricci", "--order", "6", "--word", "NGNG"], code: 0, expect: &["terms: 13 (expected 13)", "constant of ∇Γ∇Γ: 4q(q-3)"] },
    Case { name: "ricci_word_8.txt", args: &["ricci", "--order", "8", "--word", "GNGGN"], code: 0, expect: &["constant of Γ∇Γ²∇: 56(q-1)(q-3)(q-6)"] },
    Case {
        name: "excluded_sym2.txt",
        args: &["excluded", "--geometry", "projective", "--labels", "0,0,2", "--order", "2", "--n", "4"],
        code: 0,
        expect: &["excluded weights: {-2, -7, -1, -6}"],
    },
    Case {
        name: "excluded_vector_fields.txt",
        args: &["excluded", "--geometry", "projective", "--labels", "0,0,1", "--order", "1", "--n", "4"],
        code: 0,
        expect: &["excluded weights: {-1, -5}"],
    },
    Case {
        name: "excluded_functions.txt",
        args: &["excluded", "--geometry", "projective", "--labels", "0,0,0", "--order", "3", "--n", "4"],
        code: 0,
        expect: &["excluded weights: {0, 1, 2}"],
    },
    Case { name: "branch_sym2.txt", args: &["branch", "--n", "4", "--labels", "0,0,2", "--order", "2", "--k", "v+2"], code: 0, expect: &["slot 4:", "(ok)"] },
    Case {
        name: "branch_vector_fields.txt",
        args: &["branch", "--n", "4", "--labels", "0,0,1", "--order", "1", "--k", "v+1"],
        code: 0,
        expect: &["slot 0: x(v+1)(0)(0)(1)", "slot 1: x(v-1)(1)(0)(1) + x(v)(0)(0)(0)", "slot 2: x(v-2)(1)(0)(0)"],
    },
    Case {
        name: "branch_functions.txt",
        args: &["branch", "--n", "3", "--labels", "0,0", "--order", "3", "--k", "w"],
        code: 0,
        expect: &["slot 1: x(w-2)(1)(0)", "slot 3: x(w-6)(3)(0)"],
    },
    Case { name: "splitting_projective.txt", args: &["splitting", "--geometry", "projective", "--n", "4", "--k", "3"], code: 0, expect: &["excluded v = -7 ", "excluded v = -9 "] },
    Case { name: "splitting_conformal.txt", args: &["splitting", "--geometry", "conformal", "--n", "5", "--k", "2"], code: 0, expect: &["excluded v = -6 ", "excluded v = -7 "] },
    Case {
        name: "splitting_conformal_families.txt",
        args: &["splitting", "--geometry", "conformal", "--n", "6", "--k", "2", "--order", "3"],
        code: 0,
        expect: &["(family 4,"],
    },
    Case { name: "splitting_cr_holomorphic.txt", args: &["splitting", "--geometry", "cr_holomorphic", "--n", "3", "--k", "2"], code: 0, expect: &["excluded w' = -3 ", "excluded w' = -4 "] },
    Case { name: "splitting_cr_antiholomorphic.txt", args: &["splitting", "--geometry", "cr_antiholomorphic", "--n", "3", "--k", "2"], code: 0, expect: &[] },
    Case {
        name: "bgg_a2.txt",
        args: &["bgg", "--weight", "A2: x(a) o(b)"],
        code: 0,
        expect: &["[0] -> [1]  order a+1", "[1] -> [2]  order b+1", "x(-a-2) o(a+b+1)", "x(-a-b-3) o(a)"],
    },
    Case { name: "bgg_a2.dot", args: &["bgg", "--weight", "A2: x(a) o(b)", "--style", "dot"], code: 0, expect: &["n0 -> n1 [label=\"a+1\""] },
    Case { name: "bgg_a4.txt", args: &["bgg", "--weight", "A4: x(a) o(b) o(c) o(d)"], code: 0, expect: &["order d+1"] },
    Case { name: "bgg_b3.txt", args: &["bgg", "--weight", "B3: x(a) o(b) o(c)"], code: 0, expect: &["non-extremal"] },
    Case { name: "bgg_d4.txt", args: &["bgg", "--weight", "D4: x(a) o(b) o(c) o(d)"], code: 0, expect: &["family: ConformalEven"] },
    Case { name: "bgg_cr_a3.txt", args: &["bgg", "--weight", "A3: x(a) o(b) x(c)"], code: 0, expect: &["family: Cr"] },
    Case { name: "bgg_b3_numeric.txt", args: &["bgg", "--weight", "B3: x(1) o(0) o(1)"], code: 0, expect: &["euler: sum 0 (ok)"] },
    Case { name: "oracle_sl2.txt", args: &["oracle-verify", "--seed", "7"], code: 0, expect: &["30 of 30 instances agree"] },
    Case { name: "oracle_sl2_m3.json", args: &["--format", "json", "oracle-verify", "--order", "3", "--q", "5", "--q-prime", "7"], code: 0, expect: &["\"agree\": true"] },
    Case { name: "oracle_sl2_dichotomy.txt", args: &["oracle-verify", "--order", "2", "--q", "1", "--q-prime", "1"], code: 2, expect: &["oracle dimension 2"] },
    Case {
        name: "oracle_characters_levi.txt",
        args: &["oracle-verify", "--check", "characters", "--type", "A2", "--lambda", "2,0", "--mu", "0,1"],
        code: 0,
        expect: &["decomposition: 1x(1,0) + 1x(2,1)", "true  product identity: true"],
    },
    Case {
        name: "oracle_sl3.txt",
        args: &["oracle-verify", "--check", "sl3", "--lambda", "3,0", "--mu", "2,1", "--root", "1,0", "--order", "2"],
        code: 0,
        expect: &["oracle singular vectors: 1"],
    },
];

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

fn pairings(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_pairings")).args(args).output().expect("spawn pairings");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned(), String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("PAIRINGS_UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for c in CASES {
        let (code, stdout, stderr) = pairings(c.args);
        assert_eq!(code, c.code, "{}: exit code, stderr {stderr}", c.name);
        for e in c.expect {
            assert!(stdout.contains(e), "{}: missing {e:?} in\n{stdout}", c.name);
        }
        let path = golden_dir().join(c.name);
        if update {
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        if want != stdout {
            failures.push(format!("{}:\n--- golden\n{want}\n--- actual\n{stdout}", c.name));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn every_golden_file_has_a_case() {
    for entry in std::fs::read_dir(golden_dir()).unwrap() {
        let name = entry.unwrap().file_name().into_string().unwrap();
        assert!(CASES.iter().any(|c| c.name == name), "orphan golden file {name}");
    }
}

#[test]
fn runs_are_byte_stable() {
    for args in [&["oracle-verify", "--seed", "11", "--instances", "8"][..], &["cp1-check", "--order", "2", "--q", "3", "--q-prime", "1/2", "--seed", "5"]] {
        let a = pairings(args);
        let b = pairings(args);
        assert_eq!(a, b);
    }
    let a = pairings(&["oracle-verify", "--seed", "1", "--instances", "8"]);
    let b = pairings(&["oracle-verify", "--seed", "2", "--instances", "8"]);
    assert_ne!(a.1, b.1);
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema").join("report.schema.json");
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&v).unwrap()
}

#[test]
fn json_reports_match_the_schema() {
    let s = schema();
    for c in CASES {
        let mut args = vec!["--format", "json"];
        args.extend(c.args.iter().filter(|a| !matches!(**a, "--format" | "json" | "latex" | "text")));
        let (_, stdout, stderr) = pairings(&args);
        let v: serde_json::Value = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{}: {e} {stderr}", c.name));
        let msgs: Vec<String> = match s.validate(&v) {
            Ok(()) => Vec::new(),
            Err(errs) => errs.map(|e| e.to_string()).collect(),
        };
        assert!(msgs.is_empty(), "{}: {}", c.name, msgs.join("; "));
    }
    let bad = serde_json::json!({"schema": "other"});
    assert!(!s.is_valid(&bad));
}

#[test]
fn cp1_printed_instance_and_dichotomy() {
    let (code, out, _) = pairings(&["cp1-check", "--order", "1", "--q", "3", "--q-prime", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("coefficients (3, -2)") && out.contains(" pass"), "{out}");
    let (code, out, _) = pairings(&["cp1-check", "--order", "4", "--q", "3", "--q-prime", "3"]);
    assert_eq!(code, 2);
    assert_eq!(out.matches(" pass").count(), 2, "{out}");
}

#[test]
fn errors_and_usage() {
    let (code, _, err) = pairings(&["gamma", "--order", "2"]);
    assert_eq!(code, 1);
    assert!(err.contains("--q") && err.contains("Dynkin text grammar"), "{err}");
    let (code, _, err) = pairings(&["classify-first", "--v", "A3: x(w) o(0)", "--w", "A3: x(v) o(0) o(0)"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error [pairings::first_order_classify]: parabolic: rank mismatch"), "{err}");
    let (code, _, err) = pairings(&["splitting", "--geometry", "hyperbolic", "--n", "3", "--k", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("unsupported geometry"), "{err}");
    let (code, out, _) = pairings(&["--help"]);
    assert_eq!(code, 0);
    for sub in ["roots", "hasse", "grading", "branch", "kostant", "central-char", "gamma", "classify-first", "pairing-formula", "ricci", "excluded", "splitting", "bgg", "oracle-verify", "cp1-check"] {
        assert!(out.contains(sub), "{sub}");
    }
}
