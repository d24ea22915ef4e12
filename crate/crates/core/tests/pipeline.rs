//! End-to-end checks across the module boundaries: the fully specified
//! Mayer–Vietoris diagram of the cosphere bundle with its boundary maps,
//! solver re-derivation, and basis invariance.

use cosphere::exactseq::{solve_all, solve_unknown, FactFlag, SixTermDiagram};
use cosphere::fgab::{FgAbGroup, GroupHom, IntMatrix};
use cosphere::sphere::{reproduce_cosphere_ktheory, sphere_report, KTheoryConfig, PipelineConfig};

fn hom(rows: &[Vec<i64>], dom: FgAbGroup, cod: FgAbGroup) -> GroupHom {
    GroupHom::new(dom, cod, IntMatrix::from_rows(rows).unwrap()).unwrap()
}

fn z() -> FgAbGroup {
    FgAbGroup::free(1)
}

fn z2() -> FgAbGroup {
    FgAbGroup::free(2)
}

fn z_plus_z2() -> FgAbGroup {
    FgAbGroup::direct_sum(&[FgAbGroup::free(1), FgAbGroup::cyclic(2)])
}

/// The cosphere Mayer–Vietoris diagram with the solved corner groups and
/// the boundary maps filled in by hand from exactness:
///   node 0 = Z ⊕ Z/2, node 3 = Z,
///   arrow 0 sends [1] to the diagonal, arrow 2 projects onto the
///   suspension coordinate, arrow 3 vanishes, arrow 5 hits the torsion
///   class mod 2.
fn full_cosphere_diagram() -> SixTermDiagram {
    let labels = [
        "K0(C(SS2))",
        "K0(C(DxS1))^2",
        "K0(C(S1xS1))",
        "K1(C(SS2))",
        "K1(C(DxS1))^2",
        "K1(C(S1xS1))",
    ];
    SixTermDiagram::empty(labels)
        .with_node(0, z_plus_z2())
        .unwrap()
        .with_node(1, z2())
        .unwrap()
        .with_node(2, z2())
        .unwrap()
        .with_node(3, z())
        .unwrap()
        .with_node(4, z2())
        .unwrap()
        .with_node(5, z2())
        .unwrap()
        .with_arrow(0, hom(&[vec![1, 0], vec![1, 0]], z_plus_z2(), z2()))
        .unwrap()
        .with_arrow(1, hom(&[vec![-1, 1], vec![0, 0]], z2(), z2()))
        .unwrap()
        .with_arrow(2, hom(&[vec![0, 1]], z2(), z()))
        .unwrap()
        .with_arrow(3, GroupHom::zero(&z(), &z2()))
        .unwrap()
        .with_arrow(4, hom(&[vec![0, 2], vec![-1, -1]], z2(), z2()))
        .unwrap()
        .with_arrow(5, hom(&[vec![0, 0], vec![1, 0]], z2(), z_plus_z2()))
        .unwrap()
}

#[test]
fn the_full_diagram_is_exact_at_every_node() {
    let report = full_cosphere_diagram().verify_exactness().unwrap();
    assert!(report.all_exact, "{report:?}");
    assert_eq!(report.nodes.len(), 6);
}

#[test]
fn perturbing_an_injective_arrow_breaks_exactness() {
    // replace the injective degree-1 difference map by zero
    let labels = ["n0", "n1", "n2", "n3", "n4", "n5"];
    let good = full_cosphere_diagram();
    let mut d = SixTermDiagram::empty(labels);
    for i in 0..6 {
        d = d.with_node(i, good.node(i).unwrap().clone()).unwrap();
    }
    for i in 0..6 {
        let arrow = if i == 4 {
            GroupHom::zero(&z2(), &z2())
        } else {
            good.arrow(i).unwrap().clone()
        };
        d = d.with_arrow(i, arrow).unwrap();
    }
    let report = d.verify_exactness().unwrap();
    assert!(!report.all_exact);
    // the kernel of the zero arrow is everything, image of arrow 3 is 0
    assert!(!report.nodes[4].exact);
    // and downstream: the image of the zero arrow no longer fills ker δ₁
    assert!(!report.nodes[5].exact);
}

#[test]
fn deleting_a_known_corner_re_derives_it() {
    let good = full_cosphere_diagram();
    for unknown in [0usize, 3] {
        let mut d = SixTermDiagram::empty(["n0", "n1", "n2", "n3", "n4", "n5"]);
        for i in 0..6 {
            if i != unknown {
                d = d.with_node(i, good.node(i).unwrap().clone()).unwrap();
            }
        }
        for i in 0..6 {
            // the two arrows adjacent to the unknown node stay unknown
            if i != unknown && (i + 1) % 6 != unknown {
                d = d.with_arrow(i, good.arrow(i).unwrap().clone()).unwrap();
            }
        }
        let solved = solve_unknown(&d, unknown).unwrap();
        assert_eq!(
            &solved.group,
            good.node(unknown).unwrap(),
            "node {unknown} not re-derived"
        );
    }
}

/// Random unimodular matrix together with its exact inverse, as a product
/// of elementary operations.
fn random_unimodular(n: usize, rng: &mut Rng) -> (IntMatrix, IntMatrix) {
    let mut w = IntMatrix::identity(n);
    let mut w_inv = IntMatrix::identity(n);
    let mut factors: Vec<(usize, usize, i64)> = Vec::new();
    for _ in 0..6 {
        let i = (rng.next() % n as u64) as usize;
        let mut j = (rng.next() % n as u64) as usize;
        if i == j {
            j = (j + 1) % n;
        }
        let c = (rng.next() % 5) as i64 - 2;
        factors.push((i, j, c));
    }
    for &(i, j, c) in &factors {
        // E = I + c·e_ij acts on the left
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = c.into();
        w = e.mul(&w).unwrap();
    }
    for &(i, j, c) in factors.iter().rev() {
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = (-c).into();
        w_inv = e.mul(&w_inv).unwrap();
    }
    assert_eq!(w.mul(&w_inv).unwrap(), IntMatrix::identity(n));
    (w, w_inv)
}

struct Rng(u64);
impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

#[test]
fn solved_groups_are_invariant_under_unimodular_changes_of_generators() {
    let mut rng = Rng(12345);
    for trial in 0..25 {
        // change bases of the four known free nodes 1, 2, 4, 5
        let (_w1, w1i) = random_unimodular(2, &mut rng);
        let (w2, _) = random_unimodular(2, &mut rng);
        let (_w4, w4i) = random_unimodular(2, &mut rng);
        let (w5, _) = random_unimodular(2, &mut rng);
        let a1 = IntMatrix::from_rows(&[vec![-1, 1], vec![0, 0]]).unwrap();
        let a4 = IntMatrix::from_rows(&[vec![0, 2], vec![-1, -1]]).unwrap();
        // arrow in the new bases: W_target · A · W_source⁻¹
        let a1_new = w2.mul(&a1).unwrap().mul(&w1i).unwrap();
        let a4_new = w5.mul(&a4).unwrap().mul(&w4i).unwrap();
        let d = SixTermDiagram::empty(["n0", "n1", "n2", "n3", "n4", "n5"])
            .with_node(1, z2())
            .unwrap()
            .with_node(2, z2())
            .unwrap()
            .with_node(4, z2())
            .unwrap()
            .with_node(5, z2())
            .unwrap()
            .with_arrow(1, hom_from(a1_new))
            .unwrap()
            .with_arrow(4, hom_from(a4_new))
            .unwrap();
        let k0 = solve_unknown(&d, 0).unwrap().group;
        let k1 = solve_unknown(&d, 3).unwrap().group;
        assert_eq!(k0, z_plus_z2(), "trial {trial}");
        assert_eq!(k1, z(), "trial {trial}");
    }
}

fn hom_from(m: IntMatrix) -> GroupHom {
    GroupHom::new(FgAbGroup::free(m.cols()), FgAbGroup::free(m.rows()), m).unwrap()
}

#[test]
fn library_level_pipeline_is_deterministic() {
    let config = PipelineConfig {
        facts: vec![FactFlag::index_map_surjective()],
        ..Default::default()
    };
    let a = sphere_report(&config).unwrap().to_json();
    let b = sphere_report(&config).unwrap().to_json();
    assert_eq!(a, b);
}

#[test]
fn shipped_diagram_file_matches_the_derived_pipeline() {
    let text = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/css2.diagram"),
    )
    .expect("shipped diagram");
    let diagram = cosphere::exactseq::parse_diagram(&text).unwrap();
    let solved = solve_all(&diagram).unwrap();
    let derived = reproduce_cosphere_ktheory(&KTheoryConfig::default()).unwrap();
    assert_eq!(
        solved.solved[0].group,
        *derived.group("K0(C(S*S2))").unwrap()
    );
    assert_eq!(
        solved.solved[1].group,
        *derived.group("K1(C(S*S2))").unwrap()
    );
}
