//! CSV and JSON emission.
//!
//! Both formats are byte-deterministic: field order is fixed and every float
//! is printed with 17 significant digits (`{:.16e}`), enough to round-trip
//! f64 exactly. Non-finite values (the honest strategy's infinite blinding
//! fraction) print as `inf`, quoted in JSON.

use std::fmt::Write as _;

use clap::ValueEnum;

use crate::cli::commands::{
    BlindReport, ChernoffReport, ExponentReport, SimulateReport, SweepReport,
};

/// Version tag emitted as the first comment line of every CSV artifact.
pub const CSV_SCHEMA_TAG: &str = "# byzantine-fusion v1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// 17-significant-digit float, round-trippable through `str::parse::<f64>()`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_infinite() && x > 0.0 {
        "inf".to_owned()
    } else if x.is_infinite() {
        "-inf".to_owned()
    } else {
        "nan".to_owned()
    }
}

fn json_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("\"{}\"", format_float(x))
    }
}

fn json_optional_float(x: Option<f64>) -> String {
    match x {
        Some(value) => json_float(value),
        None => "null".to_owned(),
    }
}

fn csv_optional_float(x: Option<f64>) -> String {
    x.map(format_float).unwrap_or_default()
}

pub fn render_chernoff(report: &ChernoffReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "{CSV_SCHEMA_TAG}");
            let _ = writeln!(
                out,
                "pd,pf,alpha,p10,p01,pi10,pi11,t_star,c,blinded,bracket_lo,bracket_hi"
            );
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{}",
                format_float(report.pd),
                format_float(report.pf),
                format_float(report.alpha),
                format_float(report.p10),
                format_float(report.p01),
                format_float(report.pi10),
                format_float(report.pi11),
                format_float(report.t_star),
                format_float(report.c),
                report.blinded,
                csv_optional_float(report.bracket.map(|b| b.lo)),
                csv_optional_float(report.bracket.map(|b| b.hi)),
            );
            out
        }
        OutputFormat::Json => {
            let mut out = String::new();
            out.push_str("{\n");
            let _ = writeln!(out, "  \"schema\": \"byzantine-fusion.chernoff.v1\",");
            let _ = writeln!(out, "  \"pd\": {},", json_float(report.pd));
            let _ = writeln!(out, "  \"pf\": {},", json_float(report.pf));
            let _ = writeln!(out, "  \"alpha\": {},", json_float(report.alpha));
            let _ = writeln!(out, "  \"p10\": {},", json_float(report.p10));
            let _ = writeln!(out, "  \"p01\": {},", json_float(report.p01));
            let _ = writeln!(out, "  \"pi10\": {},", json_float(report.pi10));
            let _ = writeln!(out, "  \"pi11\": {},", json_float(report.pi11));
            let _ = writeln!(out, "  \"t_star\": {},", json_float(report.t_star));
            let _ = writeln!(out, "  \"c\": {},", json_float(report.c));
            let _ = writeln!(out, "  \"blinded\": {},", report.blinded);
            let _ = writeln!(
                out,
                "  \"bracket_lo\": {},",
                json_optional_float(report.bracket.map(|b| b.lo))
            );
            let _ = writeln!(
                out,
                "  \"bracket_hi\": {}",
                json_optional_float(report.bracket.map(|b| b.hi))
            );
            out.push_str("}\n");
            out
        }
    }
}

pub fn render_sweep(report: &SweepReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "{CSV_SCHEMA_TAG}");
            let _ = writeln!(out, "p10,p01,pi10,pi11,c");
            for row in &report.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    format_float(row.p10),
                    format_float(row.p01),
                    format_float(row.pi10),
                    format_float(row.pi11),
                    format_float(row.c),
                );
            }
            out
        }
        OutputFormat::Json => {
            let mut out = String::new();
            out.push_str("{\n");
            let _ = writeln!(out, "  \"schema\": \"byzantine-fusion.sweep.v1\",");
            let _ = writeln!(out, "  \"pd\": {},", json_float(report.pd));
            let _ = writeln!(out, "  \"pf\": {},", json_float(report.pf));
            let _ = writeln!(out, "  \"alpha\": {},", json_float(report.alpha));
            let _ = writeln!(out, "  \"grid_step\": {},", json_float(report.grid_step));
            out.push_str("  \"rows\": [\n");
            for (idx, row) in report.rows.iter().enumerate() {
                let comma = if idx + 1 == report.rows.len() { "" } else { "," };
                let _ = writeln!(
                    out,
                    "    {{\"p10\": {}, \"p01\": {}, \"pi10\": {}, \"pi11\": {}, \"c\": {}}}{comma}",
                    json_float(row.p10),
                    json_float(row.p01),
                    json_float(row.pi10),
                    json_float(row.pi11),
                    json_float(row.c),
                );
            }
            out.push_str("  ]\n}\n");
            out
        }
    }
}

pub fn render_blind(report: &BlindReport, format: OutputFormat) -> String {
    match (report, format) {
        (
            BlindReport::FromAttack {
                p10,
                p01,
                blinding_fraction,
            },
            OutputFormat::Csv,
        ) => {
            format!(
                "{CSV_SCHEMA_TAG}\np10,p01,blinding_fraction\n{},{},{}\n",
                format_float(*p10),
                format_float(*p01),
                format_float(*blinding_fraction),
            )
        }
        (
            BlindReport::FromAttack {
                p10,
                p01,
                blinding_fraction,
            },
            OutputFormat::Json,
        ) => {
            format!(
                "{{\n  \"schema\": \"byzantine-fusion.blind.v1\",\n  \"p10\": {},\n  \
                 \"p01\": {},\n  \"blinding_fraction\": {}\n}}\n",
                json_float(*p10),
                json_float(*p01),
                json_float(*blinding_fraction),
            )
        }
        (
            BlindReport::FromAlpha {
                alpha,
                regime,
                p10,
                p01,
                line_sum,
            },
            OutputFormat::Csv,
        ) => {
            format!(
                "{CSV_SCHEMA_TAG}\nalpha,regime,p10,p01,line_sum\n{},{},{},{},{}\n",
                format_float(*alpha),
                regime.as_str(),
                format_float(*p10),
                format_float(*p01),
                csv_optional_float(*line_sum),
            )
        }
        (
            BlindReport::FromAlpha {
                alpha,
                regime,
                p10,
                p01,
                line_sum,
            },
            OutputFormat::Json,
        ) => {
            format!(
                "{{\n  \"schema\": \"byzantine-fusion.blind.v1\",\n  \"alpha\": {},\n  \
                 \"regime\": \"{}\",\n  \"p10\": {},\n  \"p01\": {},\n  \"line_sum\": {}\n}}\n",
                json_float(*alpha),
                regime.as_str(),
                json_float(*p10),
                json_float(*p01),
                json_optional_float(*line_sum),
            )
        }
    }
}

pub fn render_exponent(report: &ExponentReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "{CSV_SCHEMA_TAG}");
            let _ = writeln!(out, "n,ln_pe,exponent_estimate");
            for &(n, ln_pe) in &report.fit.points {
                let _ = writeln!(
                    out,
                    "{n},{},{}",
                    format_float(ln_pe),
                    format_float(-ln_pe / n as f64),
                );
            }
            let _ = writeln!(out, "# slope = {}", format_float(report.fit.slope));
            let _ = writeln!(out, "# intercept = {}", format_float(report.fit.intercept));
            let _ = writeln!(out, "# r_squared = {}", format_float(report.fit.r_squared));
            let _ = writeln!(out, "# analytic_c = {}", format_float(report.analytic_c));
            let _ = writeln!(
                out,
                "# relative_gap = {}",
                format_float(report.relative_gap)
            );
            out
        }
        OutputFormat::Json => {
            let mut out = String::new();
            out.push_str("{\n");
            let _ = writeln!(out, "  \"schema\": \"byzantine-fusion.exponent.v1\",");
            let _ = writeln!(out, "  \"pd\": {},", json_float(report.pd));
            let _ = writeln!(out, "  \"pf\": {},", json_float(report.pf));
            let _ = writeln!(out, "  \"alpha\": {},", json_float(report.alpha));
            let _ = writeln!(out, "  \"p10\": {},", json_float(report.p10));
            let _ = writeln!(out, "  \"p01\": {},", json_float(report.p01));
            let _ = writeln!(out, "  \"p0\": {},", json_float(report.p0));
            let _ = writeln!(out, "  \"p1\": {},", json_float(report.p1));
            let _ = writeln!(out, "  \"pi10\": {},", json_float(report.pi10));
            let _ = writeln!(out, "  \"pi11\": {},", json_float(report.pi11));
            out.push_str("  \"points\": [\n");
            for (idx, &(n, ln_pe)) in report.fit.points.iter().enumerate() {
                let comma = if idx + 1 == report.fit.points.len() {
                    ""
                } else {
                    ","
                };
                let _ = writeln!(
                    out,
                    "    {{\"n\": {n}, \"ln_pe\": {}, \"exponent_estimate\": {}}}{comma}",
                    json_float(ln_pe),
                    json_float(-ln_pe / n as f64),
                );
            }
            out.push_str("  ],\n");
            let _ = writeln!(out, "  \"slope\": {},", json_float(report.fit.slope));
            let _ = writeln!(
                out,
                "  \"intercept\": {},",
                json_float(report.fit.intercept)
            );
            let _ = writeln!(
                out,
                "  \"r_squared\": {},",
                json_float(report.fit.r_squared)
            );
            let _ = writeln!(out, "  \"analytic_c\": {},", json_float(report.analytic_c));
            let _ = writeln!(
                out,
                "  \"relative_gap\": {}",
                json_float(report.relative_gap)
            );
            out.push_str("}\n");
            out
        }
    }
}

pub fn render_simulate(report: &SimulateReport, format: OutputFormat) -> String {
    let mode = report.report.sampling_mode.as_str();
    match format {
        OutputFormat::Csv => {
            let mut out = String::new();
            let _ = writeln!(out, "{CSV_SCHEMA_TAG}");
            let _ = writeln!(
                out,
                "trials,errors_h0,errors_h1,pe_hat,seed,mode,workers,ci_lo,ci_hi,exact_pe,z_score"
            );
            let _ = writeln!(
                out,
                "{},{},{},{},{},{mode},{},{},{},{},{}",
                report.report.trials,
                report.report.errors_h0,
                report.report.errors_h1,
                format_float(report.pe_hat),
                report.report.seed,
                report.workers,
                format_float(report.ci_lo),
                format_float(report.ci_hi),
                csv_optional_float(report.exact_pe),
                csv_optional_float(report.z_score),
            );
            out
        }
        OutputFormat::Json => {
            let mut out = String::new();
            out.push_str("{\n");
            let _ = writeln!(out, "  \"schema\": \"byzantine-fusion.simulate.v1\",");
            let _ = writeln!(out, "  \"trials\": {},", report.report.trials);
            let _ = writeln!(out, "  \"errors_h0\": {},", report.report.errors_h0);
            let _ = writeln!(out, "  \"errors_h1\": {},", report.report.errors_h1);
            let _ = writeln!(out, "  \"pe_hat\": {},", json_float(report.pe_hat));
            let _ = writeln!(out, "  \"seed\": {},", report.report.seed);
            let _ = writeln!(out, "  \"mode\": \"{mode}\",");
            let _ = writeln!(out, "  \"workers\": {},", report.workers);
            let _ = writeln!(out, "  \"ci_lo\": {},", json_float(report.ci_lo));
            let _ = writeln!(out, "  \"ci_hi\": {},", json_float(report.ci_hi));
            let _ = writeln!(
                out,
                "  \"exact_pe\": {},",
                json_optional_float(report.exact_pe)
            );
            let _ = writeln!(out, "  \"z_score\": {}", json_optional_float(report.z_score));
            out.push_str("}\n");
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_through_seventeen_digits() {
        for &x in &[
            0.1,
            2.0 / 3.0,
            -(2.0f64 * 0.2496f64.sqrt()).ln(),
            1e-300,
            0.0,
        ] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x, "{s}");
        }
        assert_eq!(format_float(f64::INFINITY), "inf");
    }

    #[test]
    fn json_quotes_non_finite() {
        assert_eq!(json_float(f64::INFINITY), "\"inf\"");
        assert!(json_float(0.5).starts_with('5'));
    }
}
