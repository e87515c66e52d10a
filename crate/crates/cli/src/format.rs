//! Text and JSON forms of rings, Fock vectors and q-series.
//!
//! Ring text:
//!
//! ```text
//! ring B_ext
//! label W(0) 0 none
//! label W(2/3) 2/3 +
//! fuse W(2/3)+ W(2/3)- -> W(0)*1 + W(2/5)*1
//! ```
//!
//! Fock vector text, one term per line: `coeff  x(-1)y(-2)  exp(1/3,2/3)`,
//! with `1` for a state without Heisenberg factors.

use std::fmt::Write as _;

use serde_json::{json, Value};
use triality_core::fusion::{Flavor, FusionRing, Label};
use triality_core::scalar::parse_scalar;
use triality_core::vertex::{CosetVector, FockState, FockVector, Lattice, Mode};
use triality_core::{FracSeries, Scalar};

use crate::error::{usage, CliResult};

pub fn ring_text(r: &FusionRing) -> String {
    let mut out = format!("ring {}\n", r.name());
    for l in r.labels() {
        let _ = writeln!(out, "label {} {} {}", l.name, l.weight, l.flavor);
    }
    for i in 0..r.len() {
        for j in 0..r.len() {
            let terms: Vec<String> =
                r.multiply(i, j).iter().map(|&(k, m)| format!("{}*{m}", r.label(k).key())).collect();
            let _ = writeln!(out, "fuse {} {} -> {}", r.label(i).key(), r.label(j).key(), terms.join(" + "));
        }
    }
    out
}

/// `(left, right, [(target, mult)])` as written in the text.
type Product = (String, String, Vec<(String, u32)>);

pub fn parse_ring(text: &str) -> CliResult<FusionRing> {
    let mut name = None;
    let mut labels: Vec<Label> = Vec::new();
    let mut products: Vec<Product> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: &str| usage(format!("ring line {}: {msg}", lineno + 1));
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["ring", n] => name = Some(n.to_string()),
            ["label", n, w, f] => {
                let flavor = match *f {
                    "none" => Flavor::None,
                    "+" => Flavor::Plus,
                    "-" => Flavor::Minus,
                    _ => return Err(at("flavor must be none, + or -")),
                };
                labels.push(Label::new(*n, parse_scalar(w)?, flavor));
            }
            ["fuse", i, j, "->", rest @ ..] => {
                let mut terms = Vec::new();
                for t in rest.iter().filter(|t| **t != "+") {
                    let (k, m) = t.rsplit_once('*').ok_or_else(|| at("terms look like `key*mult`"))?;
                    terms.push((k.to_string(), m.parse().map_err(|_| at("bad multiplicity"))?));
                }
                products.push((i.to_string(), j.to_string(), terms));
            }
            _ => return Err(at("expected a ring, label or fuse line")),
        }
    }
    let name = name.ok_or_else(|| usage("ring text has no `ring` line"))?;
    let index =
        |key: &str| labels.iter().position(|l| l.key() == key).ok_or_else(|| usage(format!("unknown label `{key}`")));
    let mut entries = Vec::new();
    for (i, j, terms) in &products {
        let (i, j) = (index(i)?, index(j)?);
        for (k, m) in terms {
            entries.push((i, j, index(k)?, *m));
        }
    }
    Ok(FusionRing::new(name, labels.clone(), &entries)?)
}

pub fn ring_json(r: &FusionRing) -> Value {
    let labels: Vec<Value> = r
        .labels()
        .iter()
        .map(|l| json!({ "key": l.key(), "name": l.name, "weight": l.weight.to_string(), "flavor": l.flavor.to_string() }))
        .collect();
    let mut products = Vec::new();
    for i in 0..r.len() {
        for j in 0..r.len() {
            let terms: Vec<Value> =
                r.multiply(i, j).iter().map(|&(k, m)| json!({ "label": r.label(k).key(), "mult": m })).collect();
            products.push(json!({ "left": r.label(i).key(), "right": r.label(j).key(), "terms": terms }));
        }
    }
    json!({
        "name": r.name(),
        "identity": r.label(r.identity()).key(),
        "labels": labels,
        "dual": (0..r.len()).map(|i| r.label(r.dual(i)).key()).collect::<Vec<_>>(),
        "products": products,
    })
}

fn state_text(lat: &Lattice, s: &FockState) -> String {
    let names = lat.basis_names();
    let modes: String = s.modes().iter().map(|m| format!("{}(-{})", names[m.index], m.level)).collect();
    let exp: Vec<String> = s.exponent().coords().iter().map(ToString::to_string).collect();
    format!("{}  exp({})", if modes.is_empty() { "1".into() } else { modes }, exp.join(","))
}

/// One line per term; `0` for the zero vector.
pub fn fock_text(lat: &Lattice, v: &FockVector) -> String {
    if v.is_zero() {
        return "0\n".into();
    }
    v.terms().map(|(s, c)| format!("{c}  {}\n", state_text(lat, s))).collect()
}

pub fn fock_json(lat: &Lattice, v: &FockVector) -> Value {
    let names = lat.basis_names();
    let terms: Vec<Value> = v
        .terms()
        .map(|(s, c)| {
            let modes: Vec<Value> =
                s.modes().iter().map(|m| json!({ "basis": names[m.index], "level": m.level })).collect();
            let exp: Vec<String> = s.exponent().coords().iter().map(ToString::to_string).collect();
            json!({ "coeff": c.to_string(), "modes": modes, "exp": exp })
        })
        .collect();
    Value::Array(terms)
}

pub fn parse_fock(lat: &Lattice, text: &str) -> CliResult<FockVector> {
    let mut v = FockVector::zero();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() || line == "0" {
            continue;
        }
        let at = |msg: String| usage(format!("vector line {}: {msg}", lineno + 1));
        let words: Vec<&str> = line.split_whitespace().collect();
        let [coeff, modes, exp] = words.as_slice() else {
            return Err(at("expected `coeff  modes  exp(...)`".into()));
        };
        let coeff = parse_scalar(coeff).map_err(|e| at(e.to_string()))?;
        let exp = exp
            .strip_prefix("exp(")
            .and_then(|e| e.strip_suffix(')'))
            .ok_or_else(|| at(format!("bad exponential `{exp}`")))?;
        let coords = exp.split(',').map(parse_scalar).collect::<Result<Vec<_>, _>>().map_err(|e| at(e.to_string()))?;
        if coords.len() != lat.rank() {
            return Err(at(format!("exponential has {} coordinates, lattice rank is {}", coords.len(), lat.rank())));
        }
        let modes = if *modes == "1" { Vec::new() } else { parse_modes(lat, modes).map_err(at)? };
        v.add_term(FockState::new(modes, CosetVector(coords)), coeff);
    }
    Ok(v)
}

fn parse_modes(lat: &Lattice, text: &str) -> Result<Vec<Mode>, String> {
    let mut out = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        let open = rest.find("(-").ok_or_else(|| format!("bad mode list `{text}`"))?;
        let close = rest[open..].find(')').ok_or_else(|| format!("bad mode list `{text}`"))? + open;
        let name = &rest[..open];
        let index =
            lat.basis_names().iter().position(|n| n == name).ok_or_else(|| format!("unknown basis `{name}`"))?;
        let level: u32 = rest[open + 2..close].parse().map_err(|_| format!("bad level in `{text}`"))?;
        if level == 0 {
            return Err("creation modes need level >= 1".into());
        }
        out.push(Mode { level, index });
        rest = &rest[close + 1..];
    }
    Ok(out)
}

fn exponent_text(e: &Scalar) -> String {
    format!("q^{{{e}}}")
}

/// `q^{a/b}: c` per nonzero term.
pub fn series_text(s: &FracSeries) -> String {
    s.terms().map(|(e, c)| format!("{}: {c}\n", exponent_text(&e))).collect()
}

pub fn series_json(s: &FracSeries) -> Value {
    let terms: Vec<Value> = s.terms().map(|(e, c)| json!([e.to_string(), c.to_string()])).collect();
    json!({ "cutoff": s.cutoff().to_string(), "scale": s.scale(), "terms": terms })
}

/// `3q^{2/3}`, or `none` for the zero series.
pub fn leading_text(s: &FracSeries) -> String {
    match s.leading() {
        Some((e, c)) => format!("{c}{}", exponent_text(&e)),
        None => "none".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use triality_core::fusion::builtin_table;
    use triality_core::fusion::tables::TABLE_NAMES;
    use triality_core::vertex::virasoro_vector;

    #[test]
    fn ring_text_round_trips() {
        for name in TABLE_NAMES {
            let r = builtin_table(name).unwrap();
            assert_eq!(parse_ring(&ring_text(&r)).unwrap(), r, "{name}");
        }
    }

    #[test]
    fn fock_text_round_trips() {
        let lat = Lattice::sqrt2_a2();
        let mut v = virasoro_vector(&lat);
        v.add_term(FockState::exponential(CosetVector::from_fracs(&[(1, 3), (-1, 3)])), parse_scalar("-2/7").unwrap());
        assert_eq!(parse_fock(&lat, &fock_text(&lat, &v)).unwrap(), v);
        assert!(fock_text(&lat, &v).contains("1  exp(1/3,-1/3)"));
    }

    #[test]
    fn malformed_vectors_are_rejected() {
        let lat = Lattice::sqrt2_a2();
        for bad in ["1 x(-1)", "1 z(-1) exp(0,0)", "1 x(-0) exp(0,0)", "1 1 exp(0)", "a 1 exp(0,0)"] {
            assert!(parse_fock(&lat, bad).is_err(), "{bad}");
        }
    }
}
