use std::collections::BTreeSet;

use num_bigint::BigInt;
use zcolor::invariants::gcd_diff;
use zcolor_spatial::build::DiagramBuilder;
use zcolor_spatial::coloring::{essential_part, observed_d_tuples, vertex_values};
use zcolor_spatial::{
    coloring_basis, is_essential, Coloring, observed_d_star, parse_diagram, theta4_build, theta4_dstar, vertex_vector,
    Diagram,
};

fn fixture(name: &str) -> Diagram {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_diagram(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// Two twist regions of 12 and 15 half-twists closed into two loops at p.
fn bouquet() -> Diagram {
    let mut b = DiagramBuilder::new();
    let e: Vec<_> = (0..4).map(|i| b.arc(format!("e{i}"))).collect();
    let cap = b.arc("cap");
    let bottom = b.arc("bottom");
    let (l1, l2) = b.twist(e[0], cap, 12, "left.");
    b.identify(l1, e[1]);
    b.identify(l2, bottom);
    let (r1, r2) = b.twist(cap, e[3], 15, "right.");
    b.identify(r1, bottom);
    b.identify(r2, e[2]);
    b.vertex("p", &e);
    b.finish()
}

#[test]
fn theta_fixture_matches_builder() {
    let d = fixture("theta4_m_n.json");
    assert_eq!(d, theta4_build(1, 5).unwrap());
    assert_eq!(d.to_json(), std::fs::read_to_string(format!("{}/../../fixtures/theta4_m_n.json", env!("CARGO_MANIFEST_DIR"))).unwrap());
}

#[test]
fn bouquet_generator() {
    let d = fixture("bouquet2.json");
    assert_eq!(d, bouquet());
    assert_eq!(d.vertices.len(), 1);
    assert_eq!(d.vertices[0].arcs_ccw.len(), 4);
    assert_eq!(d.crossings.len(), 27);
    let basis = coloring_basis(&d).unwrap();
    assert_eq!(basis.rank, 2);
    let g = essential_part(&basis.reduced()[0]).unwrap();
    assert!(is_essential(&d, &g));
    let mut v = vertex_vector(&d, &g, "p").unwrap().into_inner();
    if v.iter().any(|&a| a < 0) {
        v = v.iter().map(|a| -a).collect();
    }
    assert_eq!(v, vec![0, 60, 69, 9]);
    assert_eq!(gcd_diff(&v).unwrap(), 3);
    assert_eq!(observed_d_tuples(&d, 10).unwrap(), BTreeSet::from([vec![BigInt::from(3)]]));
}

#[test]
fn planar_theta() {
    let d = fixture("theta4_planar.json");
    assert_eq!(coloring_basis(&d).unwrap().rank, 3);
    let s = observed_d_star(&d, 4).unwrap();
    assert_eq!(s.pairs, BTreeSet::from([(1, 1)]));
    for m in 1..=4 {
        for n in 1..=4 {
            assert_ne!(s.pairs, theta4_dstar(m, n).unwrap().pairs);
        }
    }
}

/// If every vertex vector of a coloring is constant, so is the coloring.
#[test]
fn vertex_rigidity_on_fixtures() {
    for name in ["theta4_m_n.json", "bouquet2.json", "theta4_planar.json"] {
        let d = fixture(name);
        assert!(d.is_connected());
        let basis = coloring_basis(&d).unwrap();
        let gens = basis.generators.clone();
        let mut k = vec![-2i64; gens.len()];
        'outer: loop {
            let mut c = Coloring { values: vec![BigInt::from(0); d.arcs.len()] };
            for (ki, g) in k.iter().zip(&gens) {
                c = c.scaled_add(&BigInt::from(*ki), g);
            }
            let flat = d.vertices.iter().all(|v| {
                let vals = vertex_values(&d, &c, &v.id).unwrap();
                vals.windows(2).all(|w| w[0] == w[1])
            });
            if flat {
                assert!(c.is_trivial(), "{name}: {c:?}");
            }
            for i in 0..k.len() {
                if k[i] < 2 {
                    k[i] += 1;
                    continue 'outer;
                }
                k[i] = -2;
            }
            break;
        }
    }
}
