use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use qlatency::circuit::{self, Circuit, GateKind};
use qlatency::estimator::{EstimateError, EstimationResult};
use qlatency::generate::random_circuit;
use qlatency::iig::Iig;
use qlatency::mapper::{
    calibrate_speed, random_placement, simulate_with_placement, CalibrationError, MapperError, MappingResult,
};
use qlatency::qodg::Qodg;
use qlatency::report::{format_seconds, BenchReport, BenchRow};
use qlatency::{estimate, FabricConfig};
use serde::Serialize;

use crate::args::{CalibrateArgs, CompareArgs, EstimateArgs, Format, GenerateArgs, OutputArgs, SimulateArgs};
use crate::settings::{self, ConfigFile};
use crate::CliError;

const S_ASSUMPTION: &str = "d_S is an assumed value (same class as X/Y/Z); it is not in the ion-trap parameter table";

pub struct Loaded {
    pub name: String,
    pub circuit: Circuit,
}

pub fn load(path: &Path) -> Result<Loaded, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let parsed = circuit::parse_any(&text).map_err(|e| CliError::Input(format!("{}:{e}", path.display())))?;
    let circuit = if parsed.is_fault_tolerant() { parsed } else { circuit::lower(&parsed) };
    let name = path
        .file_name()
        .map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned());
    Ok(Loaded { name, circuit })
}

/// `.qn` and `.real` files of a directory in name order, or the path itself.
pub fn collect_inputs(path: &Path) -> Result<Vec<PathBuf>, CliError> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let entries = std::fs::read_dir(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let p = entry.map_err(|e| CliError::Input(e.to_string()))?.path();
        if p.is_file() && matches!(p.extension().and_then(|e| e.to_str()), Some("qn" | "real")) {
            files.push(p);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(CliError::Input(format!("{}: no .qn or .real files", path.display())));
    }
    Ok(files)
}

fn estimate_error(e: EstimateError) -> CliError {
    match e {
        EstimateError::Config(c) => CliError::Config(c.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn mapper_error(e: MapperError) -> CliError {
    match e {
        MapperError::Config(_) | MapperError::FabricTooSmall { .. } => CliError::Config(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit(out: &OutputArgs, text: String) -> Result<(), CliError> {
    match &out.out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn uses_s(c: &Circuit) -> bool {
    c.gates().iter().any(|g| g.kind() == GateKind::S)
}

#[derive(Serialize)]
struct EstimateReport<'a> {
    circuit: &'a str,
    #[serde(flatten)]
    result: &'a EstimationResult,
    assumptions: Vec<&'static str>,
}

pub fn estimate_cmd(args: &EstimateArgs) -> Result<(), CliError> {
    let cfg = settings::resolve(&args.fabric)?;
    let Loaded { name, circuit } = load(&args.input)?;
    let result = estimate(&circuit, &cfg).map_err(estimate_error)?;
    let assumptions = if uses_s(&circuit) { vec![S_ASSUMPTION] } else { vec![] };

    if let Some(path) = &args.ft_netlist {
        write_file(path, &circuit::to_netlist(&circuit))?;
    }
    if args.dot.is_some() || args.iig.is_some() {
        dump_graphs(args, &circuit, &cfg, &result)?;
    }

    let text = match args.output.format {
        Format::Json => {
            let report = EstimateReport {
                circuit: &name,
                result: &result,
                assumptions,
            };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        Format::Csv => {
            let mut s = String::from(
                "circuit,qubits,operations,latency_us,latency_s,l_cnot_avg_us,l_g_avg_us,d_uncong_us,zone_area,critical_cnot,critical_operations\n",
            );
            let _ = writeln!(
                s,
                "{name},{},{},{},{},{},{},{},{},{},{}",
                result.qubit_count,
                result.operation_count,
                result.latency_us,
                result.latency_s,
                result.l_cnot_avg,
                result.l_g_avg,
                result.d_uncong,
                result.average_zone_area.map(|b| b.to_string()).unwrap_or_default(),
                result.critical.cnot,
                result.critical.operations(),
            );
            s
        }
        Format::Text => estimate_text(&name, &result, &assumptions),
    };
    emit(&args.output, text)
}

fn estimate_text(name: &str, r: &EstimationResult, assumptions: &[&str]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "circuit        {name}");
    let _ = writeln!(s, "qubits         {}", r.qubit_count);
    let _ = writeln!(s, "operations     {}", r.operation_count);
    let _ = writeln!(s, "QODG           {} nodes, {} edges", r.qodg_nodes, r.qodg_edges);
    if let (Some(b), Some(side)) = (r.average_zone_area, r.zone_side) {
        let clamp = if r.zone_clamped { ", clamped" } else { "" };
        let _ = writeln!(s, "zone area B    {b:.4} ULB^2 (side {side}{clamp})");
    }
    let _ = writeln!(s, "d_uncong       {:.3} us", r.d_uncong);
    let _ = writeln!(s, "L_CNOT avg     {:.3} us", r.l_cnot_avg);
    let _ = writeln!(s, "L_g avg        {:.3} us", r.l_g_avg);
    let mut counts = vec![format!("cnot {}", r.critical.cnot)];
    counts.extend(r.critical.one_qubit.iter().map(|(k, n)| format!("{k} {n}")));
    let _ = writeln!(s, "critical path  {}", counts.join(", "));
    let _ = writeln!(s, "latency D      {:.3} us ({} s)", r.latency_us, format_seconds(r.latency_s));
    for a in assumptions {
        let _ = writeln!(s, "note: {a}");
    }
    s
}

fn dump_graphs(args: &EstimateArgs, c: &Circuit, cfg: &FabricConfig, r: &EstimationResult) -> Result<(), CliError> {
    if let Some(path) = &args.iig {
        write_file(path, &Iig::build(c).edge_list())?;
    }
    if let Some(path) = &args.dot {
        let g = Qodg::build(c)
            .and_then(|g| g.with_delays(&cfg.delays, r.l_cnot_avg, r.l_g_avg))
            .map_err(|e| CliError::Input(e.to_string()))?;
        let cp = g.critical_path().map_err(|e| CliError::Input(e.to_string()))?;
        write_file(path, &g.to_dot(Some(&cp.path)))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SimulateReport<'a> {
    circuit: &'a str,
    seed: u64,
    latency_s: f64,
    #[serde(flatten)]
    result: &'a MappingResult,
}

pub fn simulate_cmd(args: &SimulateArgs) -> Result<(), CliError> {
    let cfg = settings::resolve(&args.fabric)?;
    let Loaded { name, circuit } = load(&args.input)?;
    let placement =
        random_placement(circuit.qubit_count(), cfg.width, cfg.length, args.seed).map_err(mapper_error)?;
    let result = simulate_with_placement(&circuit, &cfg, placement, args.trace.is_some()).map_err(mapper_error)?;
    if let (Some(path), Some(csv)) = (&args.trace, result.trace_csv()) {
        write_file(path, &csv)?;
    }
    let latency_s = result.latency_us * 1e-6;
    let text = match args.output.format {
        Format::Json => {
            let report = SimulateReport {
                circuit: &name,
                seed: args.seed,
                latency_s,
                result: &result,
            };
            serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
        }
        Format::Csv => format!(
            "circuit,qubits,operations,seed,latency_us,latency_s,total_hops,max_channel_queue\n{name},{},{},{},{},{},{},{}\n",
            circuit.qubit_count(),
            circuit.len(),
            args.seed,
            result.latency_us,
            latency_s,
            result.total_hops,
            result.max_channel_queue
        ),
        Format::Text => format!(
            "circuit        {name}\nqubits         {}\noperations    {}\nseed           {}\nhops           {}\nmax queue      {}\nlatency        {:.3} us ({} s)\n",
            circuit.qubit_count(),
            circuit.len(),
            args.seed,
            result.total_hops,
            result.max_channel_queue,
            result.latency_us,
            format_seconds(latency_s)
        ),
    };
    emit(&args.output, text)
}

fn render_report(report: &BenchReport, format: Format) -> String {
    match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    }
}

pub fn compare_cmd(args: &CompareArgs) -> Result<(), CliError> {
    let cfg = settings::resolve(&args.fabric)?;
    let mut rows = Vec::new();
    for (k, path) in collect_inputs(&args.input)?.iter().enumerate() {
        let Loaded { name, circuit } = load(path)?;
        let t = Instant::now();
        let est = estimate(&circuit, &cfg).map_err(estimate_error)?;
        let est_time = t.elapsed().as_secs_f64();
        let seed = args.seed.wrapping_add(k as u64);
        let t = Instant::now();
        let placement =
            random_placement(circuit.qubit_count(), cfg.width, cfg.length, seed).map_err(mapper_error)?;
        let sim = simulate_with_placement(&circuit, &cfg, placement, false).map_err(mapper_error)?;
        let sim_time = t.elapsed().as_secs_f64();
        log::info!("{name}: estimated {} us, simulated {} us", est.latency_us, sim.latency_us);
        rows.push(
            BenchRow::new(name, circuit.qubit_count(), circuit.len(), est.latency_s, est_time)
                .with_simulation(sim.latency_us * 1e-6, sim_time),
        );
    }
    emit(&args.output, render_report(&BenchReport::new(rows), args.output.format))
}

#[derive(Serialize)]
struct CalibrationRow {
    circuit: String,
    simulated_us: f64,
    estimated_us: f64,
}

#[derive(Serialize)]
struct CalibrationReport {
    speed: f64,
    training_error_percent: f64,
    evaluations: usize,
    circuits: Vec<CalibrationRow>,
}

pub fn calibrate_cmd(args: &CalibrateArgs) -> Result<(), CliError> {
    let base = settings::resolve(&args.fabric)?;
    let loaded = collect_inputs(&args.input)?
        .iter()
        .map(|p| load(p))
        .collect::<Result<Vec<_>, _>>()?;
    let circuits: Vec<Circuit> = loaded.iter().map(|l| l.circuit.clone()).collect();
    let fit = calibrate_speed(&circuits, &base, args.seed).map_err(|e| match e {
        CalibrationError::Estimate(e) => estimate_error(e),
        CalibrationError::Mapper(e) => mapper_error(e),
        other => CliError::Input(other.to_string()),
    })?;
    let cfg = FabricConfig {
        speed: fit.speed,
        ..base
    };
    let mut rows = Vec::new();
    for (l, &sim) in loaded.iter().zip(&fit.simulated) {
        let est = estimate(&l.circuit, &cfg).map_err(estimate_error)?;
        rows.push(CalibrationRow {
            circuit: l.name.clone(),
            simulated_us: sim,
            estimated_us: est.latency_us,
        });
    }
    if let Some(path) = &args.save_config {
        write_file(path, &ConfigFile::from_config(&cfg).to_toml())?;
    }
    let report = CalibrationReport {
        speed: fit.speed,
        training_error_percent: fit.training_error * 100.0,
        evaluations: fit.evaluations,
        circuits: rows,
    };
    let text = match args.output.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
        Format::Csv => {
            let mut s = String::from("circuit,simulated_us,estimated_us,speed\n");
            for r in &report.circuits {
                let _ = writeln!(s, "{},{},{},{}", r.circuit, r.simulated_us, r.estimated_us, report.speed);
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "v = {:.6e} ULB/us\ntraining error {:.2}% over {} circuits ({} evaluations)\n",
                report.speed,
                report.training_error_percent,
                report.circuits.len(),
                report.evaluations
            );
            for r in &report.circuits {
                let _ = writeln!(
                    s,
                    "  {:<20} simulated {:>12} s  estimated {:>12} s",
                    r.circuit,
                    format_seconds(r.simulated_us * 1e-6),
                    format_seconds(r.estimated_us * 1e-6)
                );
            }
            s
        }
    };
    emit(&args.output, text)
}

pub fn generate_cmd(args: &GenerateArgs) -> Result<(), CliError> {
    let c = random_circuit(args.qubits, args.ops, args.cnot_fraction, args.seed)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let text = circuit::to_netlist(&c);
    match &args.out {
        Some(path) => write_file(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
