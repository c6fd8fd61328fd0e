//! Output record shared by `eval` and `table`, with CSV and JSON rendering.

use clap::ValueEnum;
use serde::Serialize;

/// Fixed CSV header; columns mirror [`OutputRecord`] fields in order.
pub const CSV_HEADER: &str = "function,x,y,re,im,abs_err_est,terms,converged,method";

/// One evaluated point. `y` is 0 when the function has no second argument;
/// for `csym` the `x`/`y` columns carry `alpha`/`beta`. `terms` counts series
/// terms for series routes and quadrature panels for the oracle route.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub function_id: String,
    pub x: f64,
    pub y: f64,
    pub re: f64,
    pub im: f64,
    pub abs_err_est: f64,
    pub terms: usize,
    pub converged: bool,
    pub method: String,
}

impl OutputRecord {
    fn csv_line(&self) -> String {
        // 17 significant digits: enough to reproduce any f64 exactly.
        format!(
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{},{},{}",
            self.function_id,
            self.x,
            self.y,
            self.re,
            self.im,
            self.abs_err_est,
            self.terms,
            self.converged,
            self.method
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Renders the full record set as one string, trailing newline included.
pub fn render(records: &[OutputRecord], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for r in records {
                out.push_str(&r.csv_line());
                out.push('\n');
            }
            out
        }
        OutputFormat::Json => {
            let mut out = serde_json::to_string_pretty(records)
                .expect("records contain only plain numbers, strings and flags");
            out.push('\n');
            out
        }
    }
}
