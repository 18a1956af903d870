use rootpoly::root_data::render_half;
use rootpoly::{parse_scalar, Scalar, Weight};

use crate::compute::ResultRecord;
use crate::error::CliResult;

fn latex_coord(x: i32) -> String {
    if x % 2 == 0 {
        (x / 2).to_string()
    } else if x < 0 {
        format!("-\\tfrac{{{}}}{{2}}", -x)
    } else {
        format!("\\tfrac{{{}}}{{2}}", x)
    }
}

fn subscript_latex(w: &Weight) -> String {
    w.0.iter().map(|&x| latex_coord(x)).collect::<Vec<_>>().join(",")
}

/// `m_{2,1,0}`.
pub fn monomial_latex(w: &Weight) -> String {
    format!("m_{{{}}}", subscript_latex(w))
}

/// `m[2,1,0]`.
pub fn monomial_plain(w: &Weight) -> String {
    format!("m[{}]", w.0.iter().map(|&x| render_half(x)).collect::<Vec<_>>().join(","))
}

/// A coefficient in front of a monomial, with a leading minus pulled out.
fn latex_term(c: &Scalar) -> (bool, String) {
    let body = c.render_latex();
    let single = c.is_rational() || (c.is_polynomial() && c.numer_denom().0.len() == 1);
    if single {
        match body.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, body),
        }
    } else if c.is_polynomial() {
        (false, format!("\\left({}\\right)", body))
    } else {
        (false, body)
    }
}

pub fn record_latex(rec: &ResultRecord) -> CliResult<String> {
    let lambda = Weight::from_doubled(rec.lambda.clone());
    let mut s = format!("p_{{{}}} = ", subscript_latex(&lambda));
    for (k, c) in rec.coefficients.iter().rev().enumerate() {
        let v = parse_scalar(&c.value)?;
        let (neg, body) = if v.is_one() { (false, String::new()) } else { latex_term(&v) };
        if neg {
            s.push_str(if k > 0 { " - " } else { "-" });
        } else if k > 0 {
            s.push_str(" + ");
        }
        if !body.is_empty() {
            s.push_str(&body);
            s.push_str("\\, ");
        }
        s.push_str(&monomial_latex(&Weight::from_doubled(c.mu.clone())));
    }
    Ok(s)
}

pub fn record_plain(rec: &ResultRecord) -> String {
    let lambda = Weight::from_doubled(rec.lambda.clone());
    let mut s = format!(
        "p[{}] in {}{} ({} terms)\n",
        lambda.render(),
        rec.root_system.family,
        rec.root_system.rank,
        rec.coefficients.len()
    );
    for c in rec.coefficients.iter().rev() {
        s.push_str(&format!("  {}  {}\n", monomial_plain(&Weight::from_doubled(c.mu.clone())), c.value));
    }
    if !rec.checks.is_empty() {
        let parts: Vec<String> = rec.checks.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        s.push_str(&format!("checks: {}\n", parts.join(" ")));
    }
    s
}
