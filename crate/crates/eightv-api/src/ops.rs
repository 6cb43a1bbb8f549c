use eightv::classify::{check_certificate, classify as classify_sig};
use eightv::evaluate::{
    affine_eval, brute_force_with, demo_grid, eo_count, interpolation_demo, ising_signature, tutte33, EvalOptions,
    IsingParams, RotationGraph, DEFAULT_MAX_EDGES,
};
use eightv::numeric::{ComplexApprox, Cyclo8, Rational, Scalar};
use eightv::signatures::EightVertexSig;

use crate::*;

fn parse_sig(text: &str) -> Result<EightVertexSig, ApiError> {
    text.parse().map_err(|e| ApiError::input(format!("bad signature `{text}`: {e}")))
}

fn parse_cyclo(what: &str, text: &str) -> Result<Cyclo8, ApiError> {
    text.parse().map_err(|_| ApiError::input(format!("bad {what} `{text}`")))
}

fn parse_graph(text: &str) -> Result<RotationGraph, ApiError> {
    Ok(text.parse()?)
}

fn options(l: &Limits) -> EvalOptions {
    EvalOptions { max_edges: l.max_edges.unwrap_or(DEFAULT_MAX_EDGES), threads: l.threads }
}

/// Decimal rendering with at most six places and trailing zeros dropped.
pub fn decimal(z: &ComplexApprox) -> String {
    fn num(x: f64) -> String {
        let s = format!("{:.6}", x);
        let s = s.trim_end_matches('0').trim_end_matches('.');
        if s == "-0" { "0".into() } else { s.into() }
    }
    let (re, im) = (num(z.re), num(z.im));
    match (re.as_str(), im.as_str()) {
        (_, "0") => re,
        ("0", _) => format!("{im}i"),
        _ if im.starts_with('-') => format!("{re}{im}i"),
        _ => format!("{re}+{im}i"),
    }
}

fn value(v: Scalar, edges: usize) -> ValueResponse {
    ValueResponse { value: v.to_string(), approx: decimal(&v.to_approx()), edges, exact: v.is_exact() }
}

fn resolve_grid(req: &EvalRequest) -> Result<Grid, ApiError> {
    match (&req.grid, &req.graph) {
        (Some(_), Some(_)) => Err(ApiError::input("give either a grid or a graph, not both")),
        (Some(g), None) => {
            if req.preset.is_some() || req.sig.is_some() {
                return Err(ApiError::input("a grid carries its own signatures; drop the preset or sig"));
            }
            Ok(g.clone())
        }
        (None, Some(text)) => {
            let sig = match (req.preset, &req.sig) {
                (Some(_), Some(_)) => return Err(ApiError::input("give either a preset or a sig, not both")),
                (Some(p), None) => parse_sig(p.entries())?,
                (None, Some(s)) => parse_sig(s)?,
                (None, None) => return Err(ApiError::input("a graph needs a preset or a sig")),
            };
            Ok(parse_graph(text)?.grid("f", sig)?)
        }
        (None, None) => Err(ApiError::input("missing grid or graph")),
    }
}

pub fn classify(req: &ClassifyRequest) -> Result<Verdict, ApiError> {
    let f = parse_sig(&req.sig)?;
    classify_sig(&f).map_err(|e| ApiError::input(e.to_string()))
}

pub fn eval(req: &EvalRequest) -> Result<ValueResponse, ApiError> {
    let g = resolve_grid(req)?;
    let v = brute_force_with(&g, &options(&req.limits))?;
    Ok(value(v, g.edges.len()))
}

pub fn eval_affine(req: &EvalRequest) -> Result<ValueResponse, ApiError> {
    let g = resolve_grid(req)?;
    let v = affine_eval(&g)?;
    Ok(value(v, g.edges.len()))
}

pub fn eo(req: &GraphRequest) -> Result<ValueResponse, ApiError> {
    let g = parse_graph(&req.graph)?;
    let v = eo_count(&g, &options(&req.limits))?;
    Ok(value(v, g.edges.len()))
}

pub fn tutte(req: &GraphRequest) -> Result<ValueResponse, ApiError> {
    let g = parse_graph(&req.graph)?;
    let v = tutte33(&g, &options(&req.limits))?;
    Ok(value(v, g.edges.len()))
}

fn ising_params(couplings: &[String; 5]) -> Result<IsingParams, ApiError> {
    if couplings.iter().any(|c| c.trim().starts_with('~')) {
        let mut js = [ComplexApprox::new(0.0, 0.0); 5];
        for (j, c) in js.iter_mut().zip(couplings) {
            let text = c.trim().trim_start_matches('~');
            match format!("~{text}").parse::<Scalar>() {
                Ok(s) => *j = s.to_approx(),
                Err(_) => return Err(ApiError::input(format!("bad coupling `{c}`"))),
            }
        }
        return Ok(IsingParams::Approx(js));
    }
    let mut ks: [Rational; 5] = Default::default();
    for (k, c) in ks.iter_mut().zip(couplings) {
        *k = c.parse().map_err(|_| ApiError::input(format!("bad coupling `{c}`")))?;
    }
    Ok(IsingParams::Exact(ks))
}

pub fn ising(req: &IsingRequest) -> Result<IsingResponse, ApiError> {
    let f = ising_signature(&ising_params(&req.couplings)?)?;
    let verdict = if f.to_signature().values.iter().all(Scalar::is_exact) {
        Some(classify_sig(&f).map_err(|e| ApiError::internal(e.to_string()))?)
    } else {
        None
    };
    let value = match &req.graph {
        Some(text) => {
            let g = parse_graph(text)?.grid("f", f.clone())?;
            let v = brute_force_with(&g, &options(&req.limits))?;
            Some(self::value(v, g.edges.len()))
        }
        None => None,
    };
    Ok(IsingResponse { sig: f.to_string(), verdict, value })
}

pub fn check_cert(req: &CheckCertRequest) -> Result<CheckCertResponse, ApiError> {
    let f = parse_sig(&req.sig)?;
    Ok(CheckCertResponse { valid: check_certificate(&f, &req.certificate) })
}

pub fn demo_interp(req: &InterpRequest) -> Result<InterpolationReport, ApiError> {
    let grid = req.grid.clone().unwrap_or_else(demo_grid);
    if !grid.signatures.contains_key(&req.slot) {
        return Err(ApiError::input(format!("grid has no signature named `{}`", req.slot)));
    }
    let lambda = parse_cyclo("lambda", &req.lambda)?;
    let t = parse_cyclo("t", &req.t)?;
    Ok(interpolation_demo(&grid, &req.slot, &lambda, &t, &options(&req.limits))?)
}

pub fn health() -> Health {
    Health { status: "ok".into(), version: env!("CARGO_PKG_VERSION").into() }
}
