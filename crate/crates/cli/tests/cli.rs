use std::fs;

use flipiet_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("flipiet").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

const F132: &str = "[0,1/3) -> -x+1/3 ; [1/3,2/3) -> +x+1/3 ; [2/3,1) -> +x-1/3";

#[test]
fn builders_print_canonical_text() {
    assert_eq!(ok(&["f132", "1/3", "2/3"]).trim(), F132);
    assert_eq!(ok(&["rot", "-1/3"]).trim(), "[0,1) -> +x+2/3");
    assert_eq!(ok(&["flip"]).trim(), "[0,1) -> -x+1");
    assert_eq!(
        ok(&["xchg", "0", "1/4", "1/4", "1/2"]).trim(),
        "[0,1/4) -> +x+1/4 ; [1/4,1/2) -> +x-1/4 ; [1/2,1) -> +x"
    );
    assert_eq!(ok(&["prot", "0", "1", "1/3"]).trim(), "[0,1) -> +x+1/3");
    assert_eq!(
        ok(&["flip-on", "0", "1/2"]).trim(),
        "[0,1/2) -> -x+1/2 ; [1/2,1) -> +x"
    );
}

#[test]
fn map_algebra() {
    assert_eq!(
        ok(&["compose", "rot(1/3)", "rot(1/3)", "rot(1/3)"]).trim(),
        "[0,1) -> +x"
    );
    assert_eq!(ok(&["invert", "rot(1/4)"]).trim(), "[0,1) -> +x+3/4");
    assert_eq!(
        ok(&["canon", "[0,1/2) -> +x ; [1/2,1) -> +x"]).trim(),
        "[0,1) -> +x"
    );
    assert_eq!(ok(&["sing", F132]).trim(), "0 1/3 2/3");
    assert_eq!(ok(&["egap", "rot(1/5)"]).trim(), "inf");
    assert_eq!(ok(&["egap", F132]).trim(), "1/3");
    let es = ok(&["essupp", "xchg(0,1/4,1/2,3/4)"]);
    assert!(es.starts_with("[0,1/4] u [1/2,3/4]\n"), "{es}");
    assert!(ok(&["keane", "f3(1/4,1/4,1/2)"]).contains("flips=(-,-,-)"));
    assert_eq!(ok(&["blow", "flip", "0^+"]).trim(), "0^-");
}

#[test]
fn lifts_report_for_the_132_flip() {
    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("flip.txt");
    fs::write(&doc, "# the 132-flip\nfield 2\nf = f132(1/3, 2/3)\n").unwrap();
    let out = ok(&["--doc", doc.to_str().unwrap(), "lifts", "f"]);
    assert!(
        out.starts_with("2 hyper-clean lifts; orders: 6, 6; squares-to-identity: none\n"),
        "{out}"
    );
    assert_eq!(out.matches("mixed").count(), 2);

    let file = dir.path().join("f.map");
    fs::write(&file, F132).unwrap();
    let at = format!("@{}", file.display());
    assert_eq!(ok(&["lifts", &at]), out);
}

#[test]
fn words_and_relators() {
    // a hyper-clean lift of the 132-flip has order 6
    assert_eq!(
        ok(&["word", "q=hc(f132(1/3,2/3),0)", "q q q q q q"]).trim(),
        "()"
    );
    // its square is a 3-cycle
    assert_eq!(
        ok(&["word", "q=hc(f132(1/3,2/3),0)", "q q"]).trim(),
        "(0 1/3 2/3)"
    );
    let (code, _, err) = call(&["word", "q=hc(f132(1/3,2/3),0)", "q q q"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:class-not-identity:"), "{err}");
    // left lifts of exchanges are involutions; rotations commute
    assert_eq!(ok(&["word", "x=xchg(0,1/4,1/2,3/4)", "x x"]).trim(), "()");
    assert_eq!(
        ok(&["word", "a=rot(1/3),b=rot(1/4)", "a b a' b'"]).trim(),
        "()"
    );
}

#[test]
fn constructions() {
    let out = ok(&[
        "comrot",
        "[0,1/2) -> +x+1/4 ; [1/2,3/4) -> +x-1/2 ; [3/4,1) -> +x",
        "1/16",
    ]);
    assert!(out.contains("fixed-free: true"), "{out}");
    let out = ok(&["arbsmall", "1/2", "1/20", "1/40", "7/40", "7/40"]);
    assert!(out.contains("diameter:"), "{out}");
    let f = "[0,1/4) -> +x+1/2 ; [1/4,1/2) -> +x-1/4 ; [1/2,3/4) -> +x+1/4 ; [3/4,1) -> +x-1/2";
    let parts = ok(&["decompose", f]);
    let mut args = vec!["compose", "id"];
    args.extend(parts.lines());
    assert_eq!(ok(&args), ok(&["canon", f]));
    let (code, _, err) = call(&["decompose", "f3(1/4,1/4,1/2)"]);
    assert_eq!(code, 1);
    assert!(
        err.starts_with("error:not-orientation-preserving:"),
        "{err}"
    );
    let gadget = ok(&["gadget", "3/16", "-1/4+1/4*sqrt(2)"]);
    assert!(
        gadget.contains("suv = [0,3/8) -> -x+3/8 ; [3/8,5/8) -> -x+1 ; [5/8,1) -> -x+13/8"),
        "{gadget}"
    );
    assert!(gadget.contains("# suv is a triple flip: true"));
}

#[test]
fn gadget_output_is_a_document() {
    let out = ok(&["gadget", "3/16", "-1/4+1/4*sqrt(2)"]);
    let doc = flipiet::io::parse_document(&out, flipiet::FieldSpec::default()).unwrap();
    for name in ["u", "v", "w", "s", "suv"] {
        assert!(doc.get(name).is_some(), "{name}");
    }
}

#[test]
fn plots() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("g.svg");
    let out = ok(&[
        "gadget",
        "3/16",
        "-1/4+1/4*sqrt(2)",
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(out.starts_with("field 2"));
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<text").count(), 4, "four panels");

    let p = dir.path().join("p.svg");
    ok(&[
        "plot",
        "id",
        F132,
        "hc(f132(1/3,2/3),1)",
        "--svg",
        p.to_str().unwrap(),
    ]);
    let first = fs::read_to_string(&p).unwrap();
    ok(&[
        "plot",
        "id",
        F132,
        "hc(f132(1/3,2/3),1)",
        "--svg",
        p.to_str().unwrap(),
    ]);
    assert_eq!(first, fs::read_to_string(&p).unwrap());
}

#[test]
fn verify_suites() {
    let out = ok(&["verify", "gadget"]);
    assert_eq!(out.trim(), "PASS gadget: 1/1");
    let out = ok(&["verify", "comrot", "--seed", "3"]);
    assert!(out.starts_with("PASS comrot: 200/200"), "{out}");
    let (code, _, err) = call(&["verify", "nope"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:bad-parameters:"), "{err}");
}

#[test]
fn exit_codes_and_error_prefixes() {
    let (code, _, err) = call(&["bogus"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:syntax:"), "{err}");

    let (code, _, err) = call(&["canon", "[0,1/2) -> +x ; [1/4,1) -> +x"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:overlap:"), "{err}");

    let (code, _, err) = call(&["canon", "[0,1) -> +y"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error:syntax:"), "{err}");

    let (code, _, err) = call(&["f132", "2/3", "1/3"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:bad-parameters:"), "{err}");

    let (code, _, err) = call(&["rot", "sqrt(3)"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:field-mismatch:"), "{err}");
    assert_eq!(
        ok(&["--field", "3", "rot", "sqrt(3)"]).trim(),
        "[0,1) -> +x-1+1/1*sqrt(3)"
    );

    let (code, _, err) = call(&["lifts", "@/nonexistent/file"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:io:"), "{err}");
}
