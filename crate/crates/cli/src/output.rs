//! Number formatting and JSON encoding for reports.

use baltrunc::balance::{ReductionCertificate, ReductionMethod};
use baltrunc::lti::StateSpace;
use serde_json::{json, Value};

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

pub fn num(x: f64) -> Value {
    if x.is_finite() {
        // -0.0 and 0.0 print the same
        Value::from(round12(x) + 0.0)
    } else if x.is_nan() {
        Value::from("nan")
    } else if x > 0.0 {
        Value::from("inf")
    } else {
        Value::from("-inf")
    }
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Plain-text form used in CSV rows.
pub fn text(x: f64) -> String {
    match num(x) {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s,
        _ => unreachable!(),
    }
}

pub fn system(sys: &StateSpace) -> Value {
    let rows: Vec<Value> = (0..sys.order())
        .map(|i| nums(&(0..sys.order()).map(|j| sys.a[(i, j)]).collect::<Vec<_>>()))
        .collect();
    json!({ "A": rows, "b": nums(&sys.b), "c": nums(&sys.c), "d": num(sys.d) })
}

pub fn method_name(m: ReductionMethod) -> &'static str {
    match m {
        ReductionMethod::Truncation => "truncation",
        ReductionMethod::SingularPerturbation => "spa",
    }
}

pub fn certificate(cert: &ReductionCertificate) -> Value {
    json!({
        "order_r": cert.order_r,
        "method": method_name(cert.method),
        "bound": num(cert.bound),
        "achieved_error": num(cert.achieved_error),
        "peak_frequency": num(cert.peak_frequency),
        "tight": cert.tight,
        "s2_uniform": cert.s2_uniform,
        "verdict_mismatch": cert.verdict_mismatch,
    })
}
