use branchdisc::algebra::parse::{parse_constant, parse_parametrization, parse_poly, Q6};
use branchdisc::puiseux::Parametrization;
use branchdisc::scalar::Field;
use branchdisc::{BranchDescriptor, Error, Poly, Rat, Result};
use std::io::Read;

/// One curve input, detected from its text.
#[derive(Clone, Debug)]
pub enum Input {
    Parametrization(Parametrization<Q6>),
    Equation(Poly<Q6>),
    Descriptor(BranchDescriptor),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Parametrization(_) => "parametrization",
            Input::Equation(_) => "equation",
            Input::Descriptor(_) => "descriptor",
        }
    }
}

/// The argument, or standard input when it is absent or `-`.
pub fn read_text(arg: Option<String>) -> Result<String> {
    match arg {
        Some(s) if s != "-" => Ok(s),
        _ => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::InvalidInput(format!("cannot read standard input: {}", e)))?;
            Ok(s)
        }
    }
}

/// `{...}` is a descriptor, text with `=` a parametrization, anything else
/// an equation in `x, y`.
pub fn parse_input(text: &str) -> Result<Input> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse { position: 0, message: "empty input".into() });
    }
    if t.starts_with('{') {
        return Ok(Input::Descriptor(BranchDescriptor::from_json(t)?));
    }
    let lead = text.len() - text.trim_start().len();
    let shift = |e: Error| match e {
        Error::Parse { position, message } => Error::Parse { position: position + lead, message },
        e => e,
    };
    if t.contains('=') {
        return parse_parametrization(t).map(Input::Parametrization).map_err(shift);
    }
    let p = parse_poly(t, &["x", "y"]).map_err(shift)?.poly;
    if let Some(v) = p.support_vars().into_iter().find(|v| v != "x" && v != "y") {
        let at = t.find(v.as_str()).unwrap_or(0) + lead;
        return Err(Error::Parse { position: at, message: format!("unexpected variable {} in an equation in x, y", v) });
    }
    Ok(Input::Equation(p))
}

/// `auto` or a positive rational.
pub fn parse_trunc(text: &str) -> Result<Option<Rat>> {
    if text.trim() == "auto" {
        return Ok(None);
    }
    let (c, _) = parse_constant(text)?;
    match c.to_rat() {
        Some(r) if r > Rat::from_integer(0.into()) => Ok(Some(r)),
        _ => Err(Error::Parse { position: 0, message: "truncation order must be `auto` or a positive rational".into() }),
    }
}
