use std::path::Path;
use std::process::Command;

use nbcomplex::cli::Output;
use serde_json::Value;

fn write(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

fn nbcomplex(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nbcomplex")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn round_trip(stdout: &str) -> Output {
    let parsed: Output = serde_json::from_str(stdout).unwrap();
    let again = serde_json::to_string_pretty(&parsed).unwrap();
    assert_eq!(again.trim_end(), stdout.trim_end());
    assert_eq!(serde_json::from_str::<Output>(&again).unwrap(), parsed);
    parsed
}

#[test]
fn finite_nb_full_simplex() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ray.json", r#"{"points": [[0, 0], [1, 0], [2, 0]]}"#);
    let (code, stdout, _) = nbcomplex(&["finite-nb", &f, "--vertex", "1,0", "--generic-mode", "both"]);
    assert_eq!(code, 0);
    let Output::FiniteNb(r) = round_trip(&stdout) else { panic!("wrong report") };
    assert_eq!(r.complex.dimension, 2);
    assert_eq!(r.facets.len(), 1);
    assert_eq!(r.neighbors.unwrap().neighbors.len(), 2);
    assert!(!r.genericity.unwrap().generic);

    let (code, text, _) = nbcomplex(&["finite-nb", &f, "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("dimension 2"));
}

#[test]
fn rational_points_and_non_vertices() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "stair.json",
        r#"{"points": [[0, 0, 1], [1, 1, 0], [2, "1/2", "1/2"], [3, "1/3", "2/3"], [5, 5, 5]]}"#,
    );
    let (code, stdout, _) = nbcomplex(&["finite-nb", &f]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["non_vertices"][0]["point"], serde_json::json!(["5", "5", "5"]));
    round_trip(&stdout);
}

#[test]
fn positivity_violation_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", r#"{"basis": [[1, 0]]}"#);
    let (code, stdout, stderr) = nbcomplex(&["lattice-neighbors", &f, "--dmax", "2"]);
    assert_eq!(code, 3);
    assert!(stderr.contains("positivity"));
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["error"]["detail"]["witness"], serde_json::json!(["1", "0"]));
}

#[test]
fn non_generic_scarf_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ng.json", r#"{"points": [[2, 1], [1, 2], [2, 2]]}"#);
    let (code, stdout, _) = nbcomplex(&["scarf-resolve", &f]);
    assert_eq!(code, 4);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(v["error"]["detail"]["first"], serde_json::json!(["2", "1"]));
    assert_eq!(v["error"]["detail"]["second"], serde_json::json!(["2", "2"]));
    assert_eq!(v["error"]["detail"]["coordinate"], 1);
}

#[test]
fn scarf_resolve_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "three.json", r#"{"points": [[2, 0], [1, 1], [0, 2]]}"#);
    let (code, stdout, _) = nbcomplex(&["scarf-resolve", &f]);
    assert_eq!(code, 0);
    let Output::ScarfResolve(r) = round_trip(&stdout) else { panic!() };
    assert_eq!(r.resolution.betti, vec![3, 2]);
    assert!(r.chain.ok);
    let (_, text, _) = nbcomplex(&["scarf-resolve", &f, "--format", "text"]);
    assert!(text.contains("betti: 3 2"));
    assert!(text.contains("-x"));
}

#[test]
fn malformed_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let junk = write(dir.path(), "junk.json", "{not json");
    assert_eq!(nbcomplex(&["finite-nb", &junk]).0, 2);
    let frac = write(dir.path(), "frac.json", r#"{"basis": [["1/2", "-1/2"]]}"#);
    assert_eq!(nbcomplex(&["lattice-neighbors", &frac, "--dmax", "2"]).0, 2);
    let lat = write(dir.path(), "lat.json", r#"{"basis": [[1, -1, 0], [0, 1, -1]]}"#);
    // the bound is required
    assert_eq!(nbcomplex(&["lattice-neighbors", &lat]).0, 2);
    assert_eq!(nbcomplex(&["lattice-neighbors", &lat, "--dmax", "2", "--auto-dmax"]).0, 2);
    assert_eq!(nbcomplex(&["finite-nb", &lat]).0, 2);
    assert_eq!(nbcomplex(&["finite-nb", "/nonexistent/file.json"]).0, 2);
}

#[test]
fn lattice_commands() {
    let dir = tempfile::tempdir().unwrap();
    let lat = write(dir.path(), "lat.json", r#"{"basis": [[1, -1, 0], [0, 1, -1]], "cosets": [[0, 0, 0]]}"#);

    let (code, stdout, _) = nbcomplex(&["lattice-neighbors", &lat, "--auto-dmax"]);
    assert_eq!(code, 0);
    let Output::LatticeNeighbors(r) = round_trip(&stdout) else { panic!() };
    assert!(r.completeness.certified);
    assert_eq!(r.neighbors.len(), 18);

    let (code, stdout, _) = nbcomplex(&["lattice-neighbors", &lat, "--dmax", "8", "--vertex", "1,-1,0"]);
    assert_eq!(code, 0);
    let Output::LatticeNeighbors(r) = round_trip(&stdout) else { panic!() };
    assert!(r.neighbors.contains(&nbcomplex::Point::from_ints(&[0, 0, 0])));

    let (code, stdout, _) = nbcomplex(&["lattice-star", &lat, "--dmax", "8"]);
    assert_eq!(code, 0);
    let Output::LatticeStar(r) = round_trip(&stdout) else { panic!() };
    assert_eq!(r.star.dimension, 5);

    let (code, stdout, _) = nbcomplex(&["quotient", &lat, "--auto-dmax"]);
    assert_eq!(code, 0);
    let Output::Quotient(q) = round_trip(&stdout) else { panic!() };
    assert_eq!(q.f_vector[0], 1);

    let (code, stdout, _) = nbcomplex(&["oracle", &lat]);
    assert_eq!(code, 0);
    let Output::OracleLattice(r) = round_trip(&stdout) else { panic!() };
    assert!(r.agree);

    let (code, _, _) = nbcomplex(&["oracle", &lat, "--r-candidate", "6", "--r-witness", "6"]);
    assert_eq!(code, 2);

    let (code, text, _) = nbcomplex(&["quotient", &lat, "--dmax", "8", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(text.contains("certified true"));
}

#[test]
fn layers_and_genericity() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.json", r#"{"points": [[0, 0], [1, 0], [0, 1], [1, 1], [2, 2]]}"#);
    let (code, stdout, _) = nbcomplex(&["layers", &f, "--k", "1"]);
    assert_eq!(code, 0);
    let Output::Layers(r) = round_trip(&stdout) else { panic!() };
    assert_eq!(r.layering.layers[0], vec![nbcomplex::Point::from_ints(&[0, 0])]);
    assert_eq!(r.layering.layers[1].len(), 2);

    let (code, stdout, _) = nbcomplex(&["layers", &f, "--orthant", "-+"]);
    assert_eq!(code, 0);
    round_trip(&stdout);
    assert_eq!(nbcomplex(&["layers", &f, "--orthant", "+x"]).0, 2);

    let (code, stdout, _) = nbcomplex(&["generic-check", &f]);
    assert_eq!(code, 0);
    let Output::GenericCheck(g) = round_trip(&stdout) else { panic!() };
    assert_eq!(g.modes_agree(), Some(true));
}

#[test]
fn seeded_random_oracle_runs() {
    let (code, stdout, _) = nbcomplex(&["oracle", "--random-trials", "50", "--seed", "11"]);
    assert_eq!(code, 0);
    let Output::OracleRandom(r) = round_trip(&stdout) else { panic!() };
    assert_eq!(r.trials, 50);
    assert!(r.disagreements.is_empty());
    let (_, again, _) = nbcomplex(&["oracle", "--random-trials", "50", "--seed", "11"]);
    assert_eq!(stdout, again);

    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ray.json", r#"{"points": [[0, 0], [1, 0], [2, 0]]}"#);
    let (code, stdout, _) = nbcomplex(&["oracle", &f]);
    assert_eq!(code, 0);
    let Output::OracleFinite(r) = round_trip(&stdout) else { panic!() };
    assert!(r.agree);
}
