//! Fixture runs shared by the golden tests and the acceptance harness.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub input: Option<&'static str>,
    pub code: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], input: Option<&'static str>, code: i32) -> Case {
    Case { name, args, input, code }
}

pub const CASES: &[Case] = &[
    case("snf_identity", &["snf"], Some("identity.txt"), 0),
    case("snf_matrix", &["snf"], Some("matrix.txt"), 0),
    case("snf_bad_parse", &["snf"], Some("bad_parse.txt"), 2),
    case("cohomology_circle", &["cohomology"], Some("circle_complex.txt"), 0),
    case("cohomology_torsion", &["cohomology"], Some("torsion_complex.txt"), 0),
    case("cohomology_torsion_degree", &["cohomology", "--degree", "-1"], Some("torsion_complex.txt"), 0),
    case("cohomology_window", &["cohomology", "--degree", "5"], Some("torsion_complex.txt"), 2),
    case("cohomotopy_cobar_z4", &["cohomotopy"], Some("cobar_z4.txt"), 0),
    case("cohomotopy_constant_z6", &["cohomotopy", "--nerve-bound", "3"], Some("constant_z6.txt"), 0),
    case("cohomotopy_sign_cobar", &["cohomotopy", "--truncation", "2"], Some("sign_cobar.txt"), 0),
    case("pi1_group_cobar", &["pi1"], Some("group_cobar.txt"), 0),
    case("pi1_pointed_circle", &["pi1"], Some("pointed_circle_s3.txt"), 0),
    case("pi1_constant_group", &["pi1"], Some("constant_group.txt"), 0),
    case("pi1_infinite", &["pi1"], Some("cobar_z4.txt"), 2),
    case("ss_compare_designed_d2", &["ss-compare"], Some("designed_d2.txt"), 0),
    case("ss_compare_seed_1", &["ss-compare", "--seed", "1"], None, 0),
    case("ss_compare_seeded_file", &["ss-compare"], Some("seeded_1.txt"), 0),
    case("ss_compare_window", &["ss-compare", "--page-max", "1"], None, 2),
    case("cech_two_opens", &["cech"], Some("two_opens.txt"), 0),
    case("cech_sphere", &["cech"], Some("sphere.txt"), 0),
    case("brauer_nerve_z2", &["brauer"], Some("nerve_z2.txt"), 0),
    case("brauer_nerve_z4_z6", &["brauer"], Some("nerve_z4_z6.txt"), 0),
    case("brauer_sphere_z5", &["brauer"], Some("sphere_z5.txt"), 0),
    case("brauer_nerve_z2_gluing", &["brauer"], Some("nerve_z2_gluing.txt"), 0),
];

pub fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> PathBuf {
    crate_dir().join("fixtures").join(name)
}

pub fn golden_path(case: &Case) -> PathBuf {
    crate_dir().join("tests").join("golden").join(format!("{}.txt", case.name))
}

/// Exit code, stdout and stderr in one transcript; fixture paths are relative so the text is
/// independent of the checkout location.
pub fn run(bin: &Path, case: &Case) -> (i32, String) {
    let mut cmd = Command::new(bin);
    cmd.current_dir(crate_dir()).args(case.args);
    if let Some(f) = case.input {
        cmd.arg("--input").arg(Path::new("fixtures").join(f));
    }
    let out = cmd.output().expect("binary runs");
    let code = out.status.code().unwrap_or(-1);
    let text = format!(
        "exit {code}\n--- stdout\n{}--- stderr\n{}",
        String::from_utf8_lossy(&out.stdout),
        String::from_utf8_lossy(&out.stderr)
    );
    (code, text)
}
