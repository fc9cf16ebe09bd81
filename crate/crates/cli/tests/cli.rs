use std::collections::HashMap;
use std::process::{Command, Output};

fn rabi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rabi")).args(args).output().expect("binary runs")
}

struct Csv {
    meta: HashMap<String, String>,
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Csv {
    fn parse(text: &str) -> Self {
        let mut meta = HashMap::new();
        let mut header = Vec::new();
        let mut rows = Vec::new();
        for line in text.lines() {
            if let Some(kv) = line.strip_prefix("# ") {
                let (k, v) = kv.split_once('=').expect("key=value metadata");
                meta.insert(k.to_string(), v.to_string());
            } else if header.is_empty() {
                header = line.split(',').map(str::to_string).collect();
            } else {
                let row: Vec<String> = line.split(',').map(str::to_string).collect();
                assert_eq!(row.len(), header.len(), "ragged row: {line}");
                rows.push(row);
            }
        }
        Self { meta, header, rows }
    }

    fn column(&self, name: &str) -> Vec<f64> {
        let i = self.header.iter().position(|h| h == name).unwrap_or_else(|| panic!("no column {name}"));
        self.rows.iter().map(|r| r[i].parse().unwrap()).collect()
    }

    fn meta_f64(&self, key: &str) -> f64 {
        self.meta[key].parse().unwrap()
    }
}

fn stdout_csv(args: &[&str]) -> Csv {
    let out = rabi(args);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    Csv::parse(&String::from_utf8(out.stdout).unwrap())
}

#[test]
fn output_is_deterministic() {
    let args = ["figure", "1", "--g-steps", "9"];
    let a = rabi(&args);
    let b = rabi(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn spectrum_sweep_layout() {
    let csv = stdout_csv(&["figure", "2", "--g-steps", "5"]);
    assert_eq!(csv.meta["command"], "spectrum");
    assert_eq!(csv.meta["preset"], "figure2");
    assert_eq!(csv.meta["energy_units"], "absolute");
    assert_eq!(
        csv.header,
        [
            "g_over_omega",
            "exact_Eg",
            "exact_E1",
            "exact_E2",
            "exact_E3",
            "trwa_Eg",
            "trwa_E1",
            "trwa_E2",
            "trwa_E3",
            "status"
        ]
    );
    assert_eq!(csv.column("g_over_omega"), [0.0, 0.5, 1.0, 1.5, 2.0]);
    assert!(csv.rows.iter().all(|r| r.last().unwrap() == "ok"));
    for (e, t) in csv.column("exact_Eg").iter().zip(csv.column("trwa_Eg")) {
        assert!(t >= *e - 1e-11);
    }
    assert!(csv.meta_f64("max_fixed_point_residual") < 1e-12);
}

#[test]
fn decoupled_ground_state() {
    let csv = stdout_csv(&["spectrum", "--omega-q", "0.8", "--omega", "1", "--g", "0", "--levels", "2"]);
    for col in ["exact_Eg", "trwa_Eg", "rwa_Eg"] {
        assert!((csv.column(col)[0] + 0.4).abs() < 1e-11);
    }
}

#[test]
fn compare_at_zero_coupling() {
    let csv =
        stdout_csv(&["compare", "--omega-q", "0.5", "--omega", "1", "--g", "0", "--t-max", "20", "--n-max", "10"]);
    assert_eq!(csv.header, ["t", "P_exact", "P_trwa", "P_rwa"]);
    for method in ["trwa", "rwa"] {
        assert!(csv.meta_f64(&format!("metric.{method}.max_abs")) < 1e-9);
        assert!(csv.meta_f64(&format!("metric.{method}.time_avg")) < 1e-9);
    }
    let t = csv.column("t");
    assert_eq!(t.len(), 1001);
    for (t, p) in t.iter().zip(csv.column("P_exact")) {
        assert!((p - (0.5 * t).cos()).abs() < 1e-10);
    }
}

#[test]
fn strong_coupling_preset_ordering() {
    let csv = stdout_csv(&["figure", "5"]);
    assert!(csv.meta_f64("metric.trwa.time_avg") < csv.meta_f64("metric.rwa.time_avg"));
    assert!(csv.meta_f64("exact.truncation_shift") < 1e-8);
    assert!((csv.meta_f64("trwa.alpha") - 0.5 * csv.meta_f64("trwa.xi")).abs() < 1e-11);
}

#[test]
fn trwa_normalization_flag() {
    let base = ["dynamics", "--omega-q", "1", "--omega", "0.5", "--g", "0.4", "--t-max", "1", "--methods", "trwa"];
    let raw = stdout_csv(&base);
    let mut args = base.to_vec();
    args.push("--normalize-trwa");
    let norm = stdout_csv(&args);
    let alpha = raw.meta_f64("trwa.alpha");
    assert!((raw.column("P_trwa")[0] - (1.0 + alpha * alpha)).abs() < 1e-11);
    assert!((norm.column("P_trwa")[0] - 1.0).abs() < 1e-11);
    assert_eq!(raw.header, ["t", "P_trwa"]);
}

#[test]
fn writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig3.csv");
    let out = rabi(&["figure", "3", "--t-max", "5", "--output", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = Csv::parse(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(csv.meta["preset"], "figure3");
    assert!(csv.meta.contains_key("metric.rwa.max_abs"));
}

#[test]
fn exit_codes() {
    // invalid configuration
    assert_eq!(rabi(&["dynamics", "--omega-q", "1", "--omega", "1", "--g", "0.1", "--dt", "0"]).status.code(), Some(2));
    assert_eq!(rabi(&["spectrum", "--omega-q", "1", "--g", "0.1"]).status.code(), Some(2));
    assert_eq!(
        rabi(&["compare", "--omega-q", "1", "--omega", "1", "--g", "0.1", "--methods", "rwa"]).status.code(),
        Some(2)
    );
    assert_eq!(rabi(&["figure", "7"]).status.code(), Some(2));
    // truncation far too small for the coupling
    let out = rabi(&["spectrum", "--omega-q", "1", "--omega", "1", "--g", "2", "--n-max", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let csv = Csv::parse(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(csv.rows[0].last().unwrap(), "exact:unconverged");
    let out = rabi(&["dynamics", "--omega-q", "1", "--omega", "1", "--g", "2", "--n-max", "5", "--t-max", "5"]);
    assert_eq!(out.status.code(), Some(3));
    let csv = Csv::parse(&String::from_utf8(out.stdout).unwrap());
    assert!(csv.meta.contains_key("error.exact"));
    assert!(csv.column("P_exact").iter().all(|p| p.is_nan()));
    assert!(csv.column("P_rwa").iter().all(|p| p.is_finite()));
}
