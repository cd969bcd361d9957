use std::path::PathBuf;
use std::process::Command;

use squaretile::cli::{run, DessinDocument};
use squaretile::fixtures;
use squaretile::tiling::validate_tricoloring;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn squaretile(args: &[&str], stdin: &str) -> Output {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("squaretile").chain(args.iter().copied());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

#[test]
fn info_on_one_square_torus() {
    let o = squaretile(&["info", &fixture("one_square_torus.toml")], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout, "V=1 E=2 F=1 genus=1\nface degrees: 4x1\n");
}

#[test]
fn info_reads_stdin() {
    let text = std::fs::read_to_string(fixture("tetrahedron.toml")).unwrap();
    let o = squaretile(&["info", "-"], &text);
    assert_eq!(o.stdout.lines().next(), Some("V=4 E=6 F=4 genus=0"));
}

#[test]
fn subdivide_auto_refines() {
    let o = squaretile(&["subdivide", &fixture("one_square_torus.toml")], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stderr, "notice: auto-refined 2x2\n");
    let doc = DessinDocument::parse(&o.stdout).unwrap();
    let d = doc.dessin().unwrap();
    assert_eq!(d.faces().count(), 16);
    assert!(d.faces().sizes().iter().all(|&s| s == 3));
    let t = doc.tricolored(&d).unwrap().unwrap();
    assert!(validate_tricoloring(&t).is_empty());

    // the emitted document validates cleanly through the CLI as well
    let v = squaretile(&["validate", "-"], &o.stdout);
    assert_eq!((v.code, v.stdout.as_str()), (0, "valid\n"));
}

#[test]
fn subdivide_bipartite_grid_without_notice() {
    let o = squaretile(&["subdivide", &fixture("grid_2x2.toml")], "");
    assert_eq!(o.code, 0);
    assert_eq!(o.stderr, "");
    let p = squaretile(&["passport", "-"], &o.stdout);
    assert_eq!(
        p.stdout,
        "degree=8 over_0=[4,4] over_1=[4,4] over_inf=[2,2,2,2]\ngenus=1\n"
    );
}

#[test]
fn refine_then_info() {
    let o = squaretile(&["refine", &fixture("one_square_torus.toml")], "");
    let i = squaretile(&["info", "-"], &o.stdout);
    assert_eq!(i.stdout, "V=4 E=8 F=4 genus=1\nface degrees: 4x4\n");
    let t = squaretile(&["refine", &fixture("tetrahedron.toml")], "");
    assert_eq!(t.code, 1);
    assert!(
        t.stderr.starts_with("error[not-square-tiling]: "),
        "{}",
        t.stderr
    );
}

#[test]
fn barycentric_of_plain_and_colored_documents() {
    let o = squaretile(&["barycentric", &fixture("tetrahedron.toml")], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let i = squaretile(&["info", "-"], &o.stdout);
    assert_eq!(i.stdout, "V=14 E=36 F=24 genus=0\nface degrees: 3x24\n");

    let o = squaretile(&["barycentric", &fixture("octahedron_tricolored.toml")], "");
    let p = squaretile(&["passport", "-"], &o.stdout);
    assert!(p.stdout.starts_with("degree=24 "), "{}", p.stdout);
    assert!(p.stdout.ends_with("genus=0\n"));
}

#[test]
fn map_eval_grid_3() {
    let o = squaretile(&["map-eval", "--spec", "square_cell", "--grid", "3"], "");
    assert_eq!(o.code, 0, "{}", o.stderr);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "t_re,t_im,z_re,z_im");
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"1,0,0,1"), "{}", o.stdout);
    assert!(lines.contains(&"0,0,0,0"), "{}", o.stdout);
}

#[test]
fn map_eval_writes_file_and_reports_cut_points() {
    let dir = std::env::temp_dir().join(format!("squaretile-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("grid.csv");
    let o = squaretile(
        &[
            "map-eval",
            "--spec",
            "triangle_coord",
            "--grid",
            "2",
            "--re-max",
            "2",
            "--out",
            path.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout, "");
    assert_eq!(o.stderr, "notice: 1 point(s) could not be evaluated\n");
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.lines().any(|l| l == "2,0,nan,nan"), "{csv}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn transform_points() {
    let o = squaretile(&["transform", &fixture("triangle_points.csv")], "");
    assert_eq!(o.code, 0);
    let lines: Vec<&str> = o.stdout.lines().collect();
    assert_eq!(lines[0], "x,y,X,Y");
    assert_eq!(lines[1], "0,0,0,0");
    assert_eq!(lines[4], "1,0,1,0");
    assert_eq!(lines[8], "2,0,nan,nan");
    assert_eq!(
        o.stderr,
        "notice: 1 point(s) outside the triangle or not invertible\n"
    );
}

#[test]
fn parse_errors_name_the_index() {
    let o = squaretile(&["validate", &fixture("out_of_range.toml")], "");
    assert_eq!(o.code, 1);
    assert_eq!(
        o.stderr,
        "error[parse]: line 3, column 15: rho0[2] = 7 is out of range 0..4\n"
    );
}

#[test]
fn validate_lists_violations() {
    let o = squaretile(&["validate", &fixture("invalid_rho1.toml")], "");
    assert_eq!(o.code, 1);
    assert!(
        o.stdout.contains("violation: rho1 has fixed points"),
        "{}",
        o.stdout
    );
    assert!(o.stderr.starts_with("error[invalid]: "));

    let mut doc = DessinDocument::from_tricolored(&fixtures::octahedron_tricolored());
    doc.colors.as_mut().unwrap().face_shade[0] = squaretile::Shade::Black;
    let o = squaretile(&["validate", "-"], &doc.to_canonical_string());
    assert_eq!(o.code, 1);
    assert!(
        o.stdout
            .lines()
            .all(|l| l.starts_with("violation: colors: ")),
        "{}",
        o.stdout
    );

    let o = squaretile(&["validate", &fixture("one_square_torus_metric.toml")], "");
    assert_eq!((o.code, o.stdout.as_str()), (0, "valid\n"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(squaretile(&["frobnicate"], "").code, 2);
    assert_eq!(squaretile(&["map-eval"], "").code, 2);
    let o = squaretile(&["map-eval", "--spec", "disk"], "");
    assert_eq!(o.code, 1);
    assert!(o.stderr.starts_with("error[unknown-spec]: "));
    assert_eq!(squaretile(&["--help"], "").code, 0);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        vec!["subdivide".to_string(), fixture("one_square_torus.toml")],
        vec!["barycentric".to_string(), fixture("cube.toml")],
        vec![
            "map-eval".into(),
            "--spec".into(),
            "square_coord".into(),
            "--grid".into(),
            "4".into(),
        ],
        vec!["transform".to_string(), fixture("triangle_points.csv")],
    ] {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let a = squaretile(&args, "");
        let b = squaretile(&args, "");
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stderr, b.stderr);
    }
}

#[test]
fn fixtures_are_canonical() {
    let expected = [
        (
            "one_square_torus.toml",
            DessinDocument::from_dessin(&fixtures::one_square_torus()),
        ),
        (
            "grid_2x2.toml",
            DessinDocument::from_dessin(&fixtures::torus_grid(2, 2)),
        ),
        (
            "tetrahedron.toml",
            DessinDocument::from_dessin(&fixtures::tetrahedron()),
        ),
        ("cube.toml", DessinDocument::from_dessin(&fixtures::cube())),
        (
            "pillowcase.toml",
            DessinDocument::from_dessin(&fixtures::pillowcase()),
        ),
        (
            "octahedron_tricolored.toml",
            DessinDocument::from_tricolored(&fixtures::octahedron_tricolored()),
        ),
    ];
    for (name, doc) in expected {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let parsed = DessinDocument::parse(&text).unwrap();
        assert_eq!(parsed, doc, "{name}");
        assert_eq!(parsed.to_canonical_string(), text, "{name}");
        let again = DessinDocument::parse(&parsed.to_canonical_string()).unwrap();
        assert_eq!(again.to_canonical_string(), text, "{name}");
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_squaretile");
    let ok = Command::new(bin)
        .args(["info", &fixture("cube.toml")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(
        String::from_utf8_lossy(&ok.stdout).lines().next(),
        Some("V=8 E=12 F=6 genus=0")
    );
    let bad = Command::new(bin)
        .args(["validate", &fixture("invalid_rho1.toml")])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
