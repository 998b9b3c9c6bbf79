use horotile::parse_interval;
use horotile::ObjectSpec;
use horotile_core::Interval;
use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_horotile")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("horotile-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

fn structured(o: &Output) -> serde_json::Value {
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

#[test]
fn perturbed_shapes_fail_certification() {
    let src = std::fs::read_to_string(fixture("m004.tri")).unwrap();
    let bad = src.replacen("shape 0.4999999999999998", "shape 0.5999999999999998", 1);
    assert_ne!(src, bad);
    let p = scratch("perturbed.tri", &bad);
    let o = run(&["certify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn malformed_file_is_a_parse_error() {
    let p = scratch("garbage.tri", "num_tetrahedra two\n");
    assert_eq!(run(&["certify", p.to_str().unwrap()]).status.code(), Some(2));
    let src = std::fs::read_to_string(fixture("m004.tri")).unwrap();
    let p = scratch("truncated.tri", &src[..src.len() / 2]);
    assert_eq!(run(&["certify", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn unknown_objects_are_unsupported() {
    let m = fixture("m004.tri");
    let m = m.to_str().unwrap();
    assert_eq!(run(&["distance", m, "--objects", "point:9"]).status.code(), Some(5));
    assert_eq!(run(&["distance", m, "--objects", "cusp:1"]).status.code(), Some(5));
}

#[test]
fn missing_file_is_an_error() {
    assert_eq!(run(&["certify", "/nonexistent/file.tri"]).status.code(), Some(1));
}

#[test]
fn first_tile_contains_the_point() {
    let o = run(&["tile", fixture("m004.tri").to_str().unwrap(), "--object", "point", "--count", "1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let fields: Vec<&str> = out.split_whitespace().collect();
    assert_eq!(fields.len(), 19, "{out}");
    assert_eq!(&fields[..2], ["0", "-inf"]);
}

#[test]
fn chain_link_area_matrix() {
    let o = run(&["--output", "structured", "cusp-area-matrix", fixture("6_3_1.tri").to_str().unwrap()]);
    let v = structured(&o);
    let a = v["result"].as_array().unwrap();
    assert_eq!(a.len(), 3);
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.as_array().unwrap().iter().enumerate() {
            let x = parse_interval(x.as_str().unwrap(), 212).unwrap();
            assert!(x.contains_f64(if i == j { 28.0 } else { 7.0 }), "{i} {j} {x:?}");
            assert!(x.width_f64() < 1e-40);
        }
    }
}

#[test]
fn output_is_deterministic() {
    let m = fixture("6_3_1.tri");
    let args = ["--output", "structured", "unbiased-areas", m.to_str().unwrap()];
    let (a, b) = (run(&args), run(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let args = ["tile", m.to_str().unwrap(), "--object", "cusp", "--cusp", "2", "--count", "40"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn structured_certificate() {
    let v = structured(&run(&["--output", "structured", "certify", fixture("m004.tri").to_str().unwrap()]));
    assert_eq!(v["precision"], 212);
    assert_eq!(v["result"]["residuals_contain_zero"], true);
    let shapes = v["result"]["shapes"].as_array().unwrap();
    assert_eq!(shapes.len(), 2);
    for z in shapes {
        let im = parse_interval(z["im"].as_str().unwrap(), 212).unwrap();
        let exact = Interval::from_f64(3.0, 212).sqrt().unwrap().scale(0.5);
        assert!(im.overlaps(&exact), "{im:?}");
    }
}

#[test]
fn text_intervals_enclose_structured_ones() {
    let m = fixture("m004.tri");
    let m = m.to_str().unwrap();
    let text = stdout(&run(&["distance", m, "--objects", "point:0", "point:1"]));
    let json = structured(&run(&["--output", "structured", "distance", m, "--objects", "point:0", "point:1"]));
    let shown = parse_interval(text.split(" (").next().unwrap(), 212).unwrap();
    let exact = parse_interval(json["result"]["value"].as_str().unwrap(), 212).unwrap();
    assert!(exact.subset_of(&shown), "{shown:?} {exact:?}");
    assert_eq!(json["result"]["status"], "certified");
}

#[test]
fn higher_precision_agrees() {
    for (file, objects) in [("m004.tri", vec!["point:0"]), ("m003.tri", vec!["cusp:0"]), ("6_3_1.tri", vec!["cusp:0", "cusp:2"])] {
        let m = fixture(file);
        let at = |bits: &str| {
            let mut args = vec!["--precision", bits, "--output", "structured", "distance", m.to_str().unwrap(), "--objects"];
            args.extend(objects.iter().copied());
            let v = structured(&run(&args));
            parse_interval(v["result"]["value"].as_str().unwrap(), 1024).unwrap()
        };
        let (lo, hi) = (at("212"), at("424"));
        assert!(lo.overlaps(&hi), "{file}: {lo:?} {hi:?}");
        assert!(hi.width_f64() <= lo.width_f64(), "{file}: {lo:?} {hi:?}");
    }
}

#[test]
fn trace_finds_the_incenter() {
    let m = fixture("m004.tri");
    let v = structured(&run(&["--output", "structured", "dump-polyhedron", m.to_str().unwrap()]));
    let c = &v["result"]["tetrahedra"][1]["incenter"];
    let coords: Vec<String> = (0..4).map(|i| c[i].as_str().unwrap().to_string()).collect();
    let mut args = vec!["--output", "structured", "trace", m.to_str().unwrap(), "--point"];
    args.extend(coords.iter().map(String::as_str));
    let v = structured(&run(&args));
    let tiles = v["result"].as_array().unwrap();
    assert!(tiles.iter().any(|l| l["t"] == 1), "{tiles:?}");
}

#[test]
fn object_specs() {
    assert_eq!("point:3".parse::<ObjectSpec>(), Ok(ObjectSpec::Point(3)));
    assert_eq!("cusp:0".parse::<ObjectSpec>(), Ok(ObjectSpec::Cusp(0)));
    assert_eq!("word:aB".parse::<ObjectSpec>(), Ok(ObjectSpec::Word("aB".into())));
    for bad in ["point", "point:x", "word:", "line:1"] {
        assert!(bad.parse::<ObjectSpec>().is_err(), "{bad}");
    }
}

#[test]
fn interval_arguments() {
    let x = parse_interval("[1.5, 2.5]", 212).unwrap();
    assert!(x.contains_f64(1.5) && x.contains_f64(2.5) && !x.contains_f64(2.6));
    let y = parse_interval(" 0.1 ", 212).unwrap();
    assert!(y.contains_f64(0.1) || y.width_f64() < 1e-60);
    assert!(parse_interval("[2, 1]", 212).is_err());
    assert!(parse_interval("[1 2]", 212).is_err());
    assert!(parse_interval("abc", 212).is_err());
}
