//! Browser bindings: three read-only views over the census, each returning a
//! JSON string for the page script to draw.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use bicensus::diag::{diag_report, n_complete, nbi_diagonal_exact};
use bicensus::gf::{f_closed, pde_chain, GfWorkspace};

/// Largest truncation offered for the coefficient grid; exact series
/// products grow quickly and the page should stay responsive.
pub const MAX_GRID_ORDER: usize = 14;
/// Largest `n` offered on the asymptotic curve.
pub const MAX_CURVE_N: usize = 600;

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, JsError> {
    serde_json::to_string(v).map_err(js_err)
}

#[derive(Serialize)]
struct DiagonalEntry {
    n: usize,
    bipartite: String,
    /// `N(n, k)` on `K_n` when it is known for this `(n, k)`.
    complete: Option<String>,
}

/// `N_bi(n, k)` for `1 ≤ n ≤ max_n`, with the complete-graph count alongside
/// where one is available.
#[wasm_bindgen]
pub fn diagonal_table(k: usize, max_n: usize) -> Result<String, JsError> {
    if k > 4 {
        return Err(JsError::new("k must be at most 4"));
    }
    let rows = (1..=max_n.min(60))
        .map(|n| {
            let bipartite = nbi_diagonal_exact(k, n).map_err(js_err)?.to_string();
            let complete = match k {
                0 | 1 => n_complete(n, k).ok().map(|v| v.to_string()),
                _ if n <= 11 => n_complete(n, k).ok().map(|v| v.to_string()),
                _ => None,
            };
            Ok(DiagonalEntry {
                n,
                bipartite,
                complete,
            })
        })
        .collect::<Result<Vec<_>, JsError>>()?;
    to_json(&rows)
}

#[derive(Serialize)]
struct Grid {
    k: usize,
    order: usize,
    /// `counts[r][s] = N_bi(r, s, k)` in decimal.
    counts: Vec<Vec<String>>,
    /// `log10(1 + N_bi(r, s, k))`, for colouring.
    log10: Vec<Vec<f64>>,
}

/// The coefficient grid of `F_k` up to `order` in both variables.
#[wasm_bindgen]
pub fn series_grid(k: usize, order: usize) -> Result<String, JsError> {
    if order == 0 || order > MAX_GRID_ORDER {
        return Err(JsError::new(&format!(
            "order must be in 1..={MAX_GRID_ORDER}"
        )));
    }
    if k > 6 {
        return Err(JsError::new("k must be at most 6"));
    }
    let ws = GfWorkspace::build(order).map_err(js_err)?;
    let f = if k <= 4 {
        f_closed(&ws, k as u32).map_err(js_err)?
    } else {
        pde_chain(&ws, k).map_err(js_err)?.swap_remove(k)
    };
    let mut counts = Vec::with_capacity(order + 1);
    let mut log10 = Vec::with_capacity(order + 1);
    for r in 0..=order {
        let mut row = Vec::with_capacity(order + 1);
        let mut lrow = Vec::with_capacity(order + 1);
        for s in 0..=order {
            let c = f.integer_count(r, s).map_err(js_err)?;
            let digits = c.to_string();
            let l = if digits == "0" {
                0.0
            } else {
                approx_log10(&digits)
            };
            row.push(digits);
            lrow.push(l);
        }
        counts.push(row);
        log10.push(lrow);
    }
    to_json(&Grid {
        k,
        order,
        counts,
        log10,
    })
}

/// `log10` of a positive decimal string, to about six digits.
fn approx_log10(digits: &str) -> f64 {
    let head: String = digits.chars().take(15).collect();
    let mantissa: f64 = head.parse().unwrap_or(1.0);
    mantissa.log10() + (digits.len() - head.len()) as f64
}

#[derive(Serialize)]
struct CurvePoint {
    n: usize,
    ratio: f64,
    predicted: String,
}

/// `N_bi(n, k)` divided by its leading asymptotic prediction, sampled every
/// `step` sizes up to `max_n`.
#[wasm_bindgen]
pub fn asymptotic_curve(k: u32, max_n: usize, step: usize) -> Result<String, JsError> {
    if !(1..=4).contains(&k) {
        return Err(JsError::new("k must be in 1..=4"));
    }
    let step = step.max(1);
    let start = if k == 1 { 4 } else { 3 * k as usize - 1 };
    let points = (start..=max_n.min(MAX_CURVE_N))
        .step_by(step)
        .map(|n| {
            let r = diag_report(k, n).map_err(js_err)?;
            Ok(CurvePoint {
                n,
                ratio: r.ratio,
                predicted: r.predicted,
            })
        })
        .collect::<Result<Vec<_>, JsError>>()?;
    to_json(&points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log10_of_decimal_strings() {
        assert!((approx_log10("1000") - 3.0).abs() < 1e-12);
        let big = format!("2{}", "0".repeat(40));
        assert!((approx_log10(&big) - (40.0 + 2f64.log10())).abs() < 1e-9);
    }

    #[test]
    fn views_serialize() {
        let t = diagonal_table(2, 6).unwrap();
        assert!(t.contains("\"bipartite\":\"960\""));
        assert!(t.contains("\"complete\":\"5700\""));
        let g = series_grid(1, 3).unwrap();
        assert!(g.contains("\"order\":3"));
        let c = asymptotic_curve(2, 20, 5).unwrap();
        assert!(c.starts_with("[{\"n\":5,"));
    }
}
