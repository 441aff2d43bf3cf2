mod common;

use common::*;
use proptest::prelude::*;
use supertropical::catalog::{catalog, plane, twin};
use supertropical::equalizers::{Label, SPath};
use supertropical::format::*;
use supertropical::isolation::{isolate, Case};
use supertropical::transmission::ghost_map;
use supertropical::valuation::MSupervaluation;

fn reparse(text: &str) -> Workspace {
    parse(text).unwrap_or_else(|e| panic!("{e}\n{text}"))
}

#[test]
fn catalog_round_trips() {
    for u in catalog() {
        let text = write_monoid(&u);
        let ws = reparse(&text);
        assert_eq!(ws.monoids.len(), 1);
        assert_eq!(*ws.monoids[0], *u);
        assert_eq!(write_monoid(&ws.monoids[0]), text);
    }
}

#[test]
fn attached_objects_round_trip() {
    let u = twin();
    let rel = merge(&u, &[&["x1", "x2"]]);
    let pairs = vec![(el(&u, "c"), el(&u, "x1"))];
    let path = SPath {
        labels: vec![Label { s: el(&u, "x1"), u: u.one(), t: el(&u, "x2") }],
    };
    let g = ghost_map(&u);
    let phi = MSupervaluation::identity(&u).unwrap();
    let mut text = write_monoid(&u);
    text += &write_relation(&u, "merge", &rel);
    text += &write_section(&u, "s", &pairs);
    text += &write_path(&u, &path);
    text += &write_monoid(g.target());
    text += &write_map("nu", &g);
    text += &write_semiring(&phi.source);
    text += &write_valuation("phi", &phi);

    let ws = reparse(&text);
    assert_eq!(ws.relations[0].name, "merge");
    assert_eq!(ws.relations[0].partition, rel);
    assert_eq!(ws.sections[0].pairs, pairs);
    assert_eq!(ws.paths[0].path, path);
    let m = ws.map("nu").unwrap().transmission().unwrap();
    assert_eq!(m.map(), g.map());
    let v = ws.valuations[0].supervaluation().unwrap();
    assert_eq!(v.map(), phi.map());
    assert_eq!(write_semiring(ws.semiring(phi.source.name()).unwrap()), write_semiring(&phi.source));
}

#[test]
fn classes_list_only_nontrivial_blocks() {
    let u = plane();
    let p = merge(&u, &[&["x2", "xy"]]);
    assert_eq!(write_classes(&u, &p), "classes {x2 xy}");
    assert_eq!(write_classes(&u, &supertropical::Partition::discrete(u.size())), "classes");
}

#[test]
fn errors_carry_positions() {
    let bad = "monoid m\nelements 0 1 e\nzero 0\none 1\ne e\norder 0 e\nrow 0: 0 0\n";
    let e = parse(bad).unwrap_err();
    assert_eq!(e.to_string(), "7:8: row has 2 entries, expected 3");

    let e = parse("monoid m\nelements 0 1 e\nfrobnicate\n").unwrap_err();
    assert_eq!((e.line, e.column), (3, 1));
    assert!(e.message.contains("frobnicate"));

    let e = parse("relation r: classes {a b}\n").unwrap_err();
    assert_eq!(e.line, 1);

    let mut text = write_monoid(&twin());
    text += "relation r: classes {x1 zz}\n";
    let e = parse(&text).unwrap_err();
    assert!(e.message.contains("unknown element `zz`"), "{e}");

    let text = write_monoid(&twin()).replace("row x1: 0 x1 c c c c", "row x1: 0 x1 c c 0 c");
    let e = parse(&text).unwrap_err();
    assert!(e.message.starts_with("monoid `twin`"), "{e}");
}

#[test]
fn comments_and_blank_lines_are_ignored() {
    let text = format!("# fixtures\n\n{}  # trailing\n", write_monoid(&twin()));
    assert_eq!(reparse(&text).monoids.len(), 1);
}

#[test]
fn isolation_renders_parse_back() {
    for u in catalog() {
        for x in u.tangibles() {
            let r = isolate(&u, x).unwrap();
            let (y, case, witness) = parse_isolation(&u, &r.render(&u)).unwrap();
            assert_eq!(y, x);
            assert_eq!(case, r.case);
            assert_eq!(witness.is_some(), case == Case::II);
        }
    }
    let u = twin();
    assert!(parse_isolation(&u, "isolation x=q case=I witness=()").is_err());
    assert!(parse_isolation(&u, "isolation x=1 case=III witness=()").is_err());
}

#[test]
fn names_that_lex_cleanly() {
    assert!(is_valid_name("x2y"));
    for bad in ["", "a b", "a->b", "{a", "a#"] {
        assert!(!is_valid_name(bad), "{bad}");
    }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn random_monoids_round_trip(u in arb_monoid(8)) {
        let text = write_monoid(&u);
        let ws = parse(&text).unwrap();
        prop_assert_eq!(&*ws.monoids[0], &*u);
    }
}
