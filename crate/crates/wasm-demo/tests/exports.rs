use qlatency_wasm::{coverage_distribution, coverage_grid, estimate_netlist, estimate_random};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn grid_sums_to_expected_zone_area() {
    let v = parse(coverage_grid(10, 8, 5.0));
    assert_eq!(v["side"], 3);
    let cells: Vec<f64> = v["cells"].as_array().unwrap().iter().map(|c| c.as_f64().unwrap()).collect();
    assert_eq!(cells.len(), 80);
    // Each placement covers side^2 cells, so probabilities add to side^2.
    assert!((cells.iter().sum::<f64>() - 9.0).abs() < 1e-9);
}

#[test]
fn distribution_conserves_fabric_area() {
    let v = parse(coverage_distribution(12, 12, 4.0, 6, 20, 2));
    let levels = v.as_array().unwrap();
    assert_eq!(levels.len(), 7);
    let total: f64 = levels.iter().map(|l| l["expected_area"].as_f64().unwrap()).sum();
    assert!((total - 144.0).abs() < 1e-9);
    assert_eq!(levels[2]["delay"], 1.0);
    assert_eq!(levels[3]["delay"], 2.0);
}

#[test]
fn netlist_estimate_and_curve() {
    let v = parse(estimate_netlist("qubits 1\nh q0\n", 60, 60, 5, 0.001));
    assert_eq!(v["result"]["latency_us"], 5640.0);
    assert_eq!(v["speed_curve"].as_array().unwrap().len(), 25);

    let toffoli = ".numvars 3\n.variables a b c\n.begin\nt3 a b c\n.end\n";
    let v = parse(estimate_netlist(toffoli, 60, 60, 5, 0.001));
    assert_eq!(v["result"]["operation_count"], 15);
}

#[test]
fn slower_routing_lengthens_random_circuits() {
    let v = parse(estimate_random(20, 2000, 0.4, 1, 60, 60, 5, 0.001));
    let curve = v["speed_curve"].as_array().unwrap();
    let first = curve.first().unwrap()[1].as_f64().unwrap();
    let last = curve.last().unwrap()[1].as_f64().unwrap();
    assert!(first > last);
}

#[test]
fn errors_are_reported_as_json() {
    assert!(parse(estimate_netlist("qubits 2\ncnot q0 q5\n", 60, 60, 5, 0.001))["error"].is_string());
    assert!(parse(estimate_random(5, 10, 0.4, 0, 0, 9, 5, 0.001))["error"].is_string());
    assert!(parse(coverage_grid(0, 3, 1.0))["error"].is_string());
}
