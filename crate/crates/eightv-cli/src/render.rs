use eightv_api::{CheckCertResponse, InterpolationReport, IsingResponse, ValueResponse};
use serde::Serialize;

pub fn json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

pub fn value(v: &ValueResponse, as_json: bool) {
    if as_json {
        return json(v);
    }
    if v.exact && v.value != v.approx {
        println!("{}  (≈ {})", v.value, v.approx);
    } else if v.exact {
        println!("{}", v.value);
    } else {
        println!("≈ {}", v.approx);
    }
}

pub fn ising(r: &IsingResponse, as_json: bool) {
    if as_json {
        return json(r);
    }
    println!("signature  {}", r.sig);
    match &r.verdict {
        Some(v) => println!("verdict    {} ({:?})", v.kind(), v.branch()),
        None => println!("verdict    not classified (approximate entries)"),
    }
    if let Some(v) = &r.value {
        print!("value      ");
        value(v, false);
    }
}

pub fn check(r: &CheckCertResponse, as_json: bool) {
    if as_json {
        return json(r);
    }
    println!("{}", if r.valid { "certificate valid" } else { "certificate rejected" });
}

pub fn interp(r: &InterpolationReport, as_json: bool) {
    if as_json {
        return json(r);
    }
    println!("slots: {}", r.slots);
    println!("{:<28} value / scale", "lambda_s");
    for (x, y) in &r.samples {
        println!("{:<28} {}", x.pretty(), y.pretty());
    }
    let coeffs: Vec<String> = r.coefficients.iter().map(|c| c.pretty()).collect();
    println!("coefficients (ascending): {}", coeffs.join(", "));
    println!("interpolated: {}", r.value.pretty());
    println!("direct:       {}", r.direct.pretty());
    println!("{}", if r.value == r.direct { "match" } else { "MISMATCH" });
}
