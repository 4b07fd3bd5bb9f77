use curve_gb_web::{check, check_json, explore, explore_json, normal_form, normal_form_json};
use serde_json::Value;

#[test]
fn explore_grid_marks_the_window() {
    let v = explore_json("7,8", 6).unwrap();
    assert_eq!(v["instance"], "(7,8; 6)");
    let grid = v["grid"].as_array().unwrap();
    assert_eq!(grid.len(), 4);
    assert_eq!(grid[0].as_array().unwrap().len(), 4);
    // W = [1, 3] x [1, 3] for u - z = 1 and upsilon - w = 1
    assert_eq!(grid[0][0]["in_window"], true);
    assert_eq!(grid[1][1]["in_window"], false);
    assert_eq!(grid[3][0]["in_window"], true);
    assert_eq!(grid[1][1]["value"], 14);
    assert_eq!(v["phi"].as_array().unwrap().len(), 3);
}

#[test]
fn check_reports_witnesses() {
    let v = check_json("7,8", 6, "omega", "asc").unwrap();
    assert_eq!(v["groebner"], "NOT_GB");
    assert_eq!(v["witness"]["s_polynomial"], "x1^4 - x0^2*x2^3");

    let v = check_json("20,21,22,23,24", 29, "patil-singh", "desc").unwrap();
    assert_eq!(v["witness"]["pair"], serde_json::json!(["theta", "xi_{1,3}"]));

    let v = check_json("7,8", 6, "phi", "asc").unwrap();
    assert_eq!((v["groebner"].as_str(), v["minimal"].as_str()), (Some("GB"), Some("MINIMAL")));

    let v = check_json("7,8,9", 11, "patil-singh", "asc").unwrap();
    assert_eq!(v["minimal"]["multiple"], "psi_1");
}

#[test]
fn normal_forms_agree() {
    let v = normal_form_json("7,8", 6, "x1^5").unwrap();
    assert_eq!(v["generic"], "x0^4*x2^2");
    assert_eq!(v["ladder"]["normal_form"], "x0^4*x2^2");
    assert_eq!(v["ladder"]["trace"], serde_json::json!(["phi_0", "psi_0"]));

    let v = normal_form_json("7,8", 6, "1").unwrap();
    assert_eq!(v["generic"], "1");
    assert!(v["ladder"]["unsupported"].is_string());
}

#[test]
fn exports_return_error_objects() {
    let parse = |s: String| serde_json::from_str::<Value>(&s).unwrap();
    assert_eq!(parse(explore("5,6", 11))["error"]["name"], "NotMinimallyGenerated");
    assert_eq!(parse(explore("7,x", 6))["error"]["name"], "Parse");
    assert_eq!(parse(check("7,8", 6, "nope", "asc"))["error"]["name"], "Parse");
    assert_eq!(parse(check("7,8", 6, "phi", "sideways"))["error"]["name"], "Parse");
    assert_eq!(parse(normal_form("7,8", 6, "x9"))["error"]["name"], "DimensionMismatch");
    assert_eq!(parse(normal_form("7,8", -6, "x1"))["error"]["name"], "NonPositive");
    assert_eq!(parse(explore("7,8", 6))["parameters"]["u"], 4);
}
