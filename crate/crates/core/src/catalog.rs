//! Named fixture monoids.

use std::sync::Arc;

use crate::monoid::{spec_from_fn, validate_monoid, MonoidRef};

fn build(
    name: &str,
    names: &[&str],
    ghost_order: &[&str],
    product: impl Fn(&str, &str) -> String,
) -> MonoidRef {
    let spec = spec_from_fn(name, names, "0", "1", "e", ghost_order, product)
        .expect("fixture names are consistent");
    Arc::new(validate_monoid(spec).expect("fixture is a valid supertropical monoid"))
}

/// Product of two ghosts in the chain `0 < e < c` with `c·c = c`.
fn chain_ec(a: &str, b: &str) -> String {
    if a == "c" || b == "c" { "c" } else { "e" }.to_string()
}

/// Shared rule for the fixtures over `0 < e < c`: `ghost` gives the ghost of
/// each element, `tangible` the product of two non-unit tangibles.
fn over_ec(
    a: &str,
    b: &str,
    ghost: impl Fn(&str) -> &'static str,
    tangible: impl Fn(&str, &str) -> String,
) -> String {
    match (a, b) {
        ("0", _) | (_, "0") => "0".into(),
        ("1", other) | (other, "1") => other.into(),
        _ if ghost(a) == a || ghost(b) == b => chain_ec(ghost(a), ghost(b)),
        _ => tangible(a, b),
    }
}

/// `{0, 1, e}` with `eU = {0 < e}`.
pub fn minimal() -> MonoidRef {
    build("minimal", &["0", "1", "e"], &["0", "e"], |a, b| match (a, b) {
        ("0", _) | (_, "0") => "0".into(),
        ("1", o) | (o, "1") => o.into(),
        _ => "e".into(),
    })
}

fn twin_ghost(x: &str) -> &'static str {
    match x {
        "0" => "0",
        "1" | "e" | "u" => "e",
        _ => "c",
    }
}

/// Tangibles `1, x1, x2` over `0 < e < c`; every product of `x1, x2` is `c`.
pub fn twin() -> MonoidRef {
    build(
        "twin",
        &["0", "1", "e", "c", "x1", "x2"],
        &["0", "e", "c"],
        |a, b| over_ec(a, b, twin_ghost, |_, _| "c".into()),
    )
}

/// Like `twin` but every product of `x1, x2` is `x1`; not a semiring.
pub fn collapse() -> MonoidRef {
    build(
        "collapse",
        &["0", "1", "e", "c", "x1", "x2"],
        &["0", "e", "c"],
        |a, b| over_ec(a, b, twin_ghost, |_, _| "x1".into()),
    )
}

/// `twin` with an extra tangible unit `u` swapping `x1` and `x2`.
pub fn swap() -> MonoidRef {
    build(
        "swap",
        &["0", "1", "e", "c", "x1", "x2", "u"],
        &["0", "e", "c"],
        |a, b| {
            over_ec(a, b, twin_ghost, |a, b| match (a, b) {
                ("u", "u") => "1".into(),
                ("u", "x1") | ("x1", "u") => "x2".into(),
                ("u", "x2") | ("x2", "u") => "x1".into(),
                _ => "c".into(),
            })
        },
    )
}

/// Name of the monomial `x^i y^j`.
pub fn monomial_name(i: usize, j: usize) -> String {
    let part = |v: &str, k: usize| match k {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}{k}"),
    };
    let s = format!("{}{}", part("x", i), part("y", j));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Name of the ghost `c^k`, with `c^0 = e`.
pub fn level_name(k: usize) -> String {
    match k {
        0 => "e".into(),
        1 => "c".into(),
        _ => format!("c{k}"),
    }
}

/// Monomials `x^i y^j` of degree at most 3 over the ghost chain
/// `0 < e < c < c2 < c3`; products leaving degree 3 become `c3`.
pub fn plane() -> MonoidRef {
    const TOP: usize = 3;
    #[derive(Clone, Copy)]
    enum El {
        Zero,
        Mono(usize, usize),
        Level(usize),
    }
    let mut elems = vec![El::Zero];
    for d in 0..=TOP {
        for i in (0..=d).rev() {
            elems.push(El::Mono(i, d - i));
        }
    }
    for k in 0..=TOP {
        elems.push(El::Level(k));
    }
    let label = |el: El| match el {
        El::Zero => "0".to_string(),
        El::Mono(i, j) => monomial_name(i, j),
        El::Level(k) => level_name(k),
    };
    let names: Vec<String> = elems.iter().map(|&el| label(el)).collect();
    let lookup = |s: &str| elems[names.iter().position(|n| n == s).expect("known name")];
    let product = |a: &str, b: &str| {
        let r = match (lookup(a), lookup(b)) {
            (El::Zero, _) | (_, El::Zero) => El::Zero,
            (El::Mono(i, j), El::Mono(k, l)) if i + j + k + l <= TOP => El::Mono(i + k, j + l),
            (El::Mono(i, j), El::Mono(k, l)) => El::Level((i + j + k + l).min(TOP)),
            (El::Mono(i, j), El::Level(k)) | (El::Level(k), El::Mono(i, j)) => {
                El::Level((i + j + k).min(TOP))
            }
            (El::Level(k), El::Level(l)) => El::Level((k + l).min(TOP)),
        };
        label(r)
    };
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let order: Vec<String> = std::iter::once("0".to_string()).chain((0..=TOP).map(level_name)).collect();
    let order_refs: Vec<&str> = order.iter().map(|s| s.as_str()).collect();
    build("plane", &name_refs, &order_refs, product)
}

/// The five named fixtures.
pub fn fixtures() -> Vec<MonoidRef> {
    vec![minimal(), twin(), plane(), collapse(), swap()]
}

/// The named fixtures followed by the frozen obstruction instances.
pub fn catalog() -> Vec<MonoidRef> {
    let mut all = fixtures();
    all.extend(crate::frozen::obstruction_fixtures());
    all
}

/// Looks up a catalog monoid by name.
pub fn by_name(name: &str) -> Option<MonoidRef> {
    catalog().into_iter().find(|m| m.name() == name)
}
