//! Machine-readable output: a single JSON report shape shared by every
//! subcommand, and fixed-column CSV. Floating-point text is always printed
//! with 17 significant digits so identical requests produce byte-identical
//! output.

use serde::Serialize;

/// 17-significant-digit rendering, round-trip exact for f64.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Serialize, Clone)]
pub struct BarrierEcho {
    pub family: String,
    #[serde(rename = "V0")]
    pub v0: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    pub hbar: f64,
    pub mass: f64,
}

#[derive(Serialize, Clone)]
pub struct GridEcho {
    pub emin: f64,
    pub emax: f64,
    pub steps: usize,
}

#[derive(Serialize, Clone)]
pub struct RequestEcho {
    pub command: String,
    pub barrier: BarrierEcho,
    pub sign: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub energy_grid: Option<GridEcho>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    pub output_format: String,
}

#[derive(Serialize, Clone)]
pub struct ResultRow {
    pub energy: f64,
    pub method: String,
    #[serde(rename = "T")]
    pub t: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub unitarity_residual: f64,
    #[serde(rename = "T_oracle", skip_serializing_if = "Option::is_none")]
    pub t_oracle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_err: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_estimate: Option<f64>,
}

#[derive(Serialize, Clone)]
pub struct CheckRow {
    pub name: String,
    /// decimal string of full precision: round-trips exactly
    pub value: String,
    pub threshold: String,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct Report {
    pub version: &'static str,
    pub request: RequestEcho,
    pub results: Vec<ResultRow>,
    pub checks: Vec<CheckRow>,
}

#[derive(Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub message: String,
}

#[derive(Serialize)]
pub struct ErrorReport {
    pub version: &'static str,
    pub request: RequestEcho,
    pub error: ErrorRecord,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    /// Fixed columns: `energy,T,R,method,unitarity_residual` plus
    /// `T_oracle,abs_err` when any row carries them; check rows use
    /// `name,value,threshold,pass`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if !self.results.is_empty() {
            let with_oracle = self.results.iter().any(|r| r.t_oracle.is_some());
            out.push_str("energy,T,R,method,unitarity_residual");
            if with_oracle {
                out.push_str(",T_oracle,abs_err");
            }
            out.push('\n');
            for row in &self.results {
                out.push_str(&format!(
                    "{},{},{},{},{}",
                    full(row.energy),
                    full(row.t),
                    full(row.r),
                    row.method,
                    full(row.unitarity_residual)
                ));
                if with_oracle {
                    out.push_str(&format!(
                        ",{},{}",
                        row.t_oracle.map(full).unwrap_or_default(),
                        row.abs_err.map(full).unwrap_or_default()
                    ));
                }
                out.push('\n');
            }
        }
        if !self.checks.is_empty() {
            out.push_str("name,value,threshold,pass\n");
            for chk in &self.checks {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    chk.name, chk.value, chk.threshold, chk.pass
                ));
            }
        }
        out
    }
}
