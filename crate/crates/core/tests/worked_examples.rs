mod common;

use common::{load_factorization, load_matrix};
use perron_roots::enumroots::{all_primary_assignments, enumerate_ev_positive_primary, enumerate_nonprimary_family};
use perron_roots::matcore::mat_power;
use perron_roots::matfun::{
    assemble_nonprimary_root, assemble_primary_root, commutant_basis, CommutantParameter,
};
use perron_roots::perron::{is_primitive, power_index, spectral_radius_data};
use perron_roots::rjcf::RealJordanDecomposition;
use perron_roots::{BranchAssignment, Error, PairIndex, RealMatrix, Tolerance};

const X_J: [[f64; 5]; 5] = [
    [1.6668, 1.0232, 0.1130, 0.4738, -0.1145],
    [0.2762, 1.3749, 0.7313, 0.6646, 0.1153],
    [0.3939, -0.0612, 1.4926, 0.5548, 0.7823],
    [0.3217, 0.3217, 0.3217, 1.4204, 0.7768],
    [0.5037, 0.5037, 0.5037, 0.0486, 1.6024],
];

const X_J_PRIME: [[f64; 5]; 5] = [
    [-0.4019, 0.2417, 1.1519, 0.7911, 1.3794],
    [0.9887, -0.1100, 0.5336, 0.6003, 1.1496],
    [0.8710, 1.3261, -0.2276, 0.7101, 0.4826],
    [0.9432, 0.9432, 0.9432, -0.1555, 0.4881],
    [0.7612, 0.7612, 0.7612, 1.2163, -0.3375],
];

fn printed(rows: &[[f64; 5]; 5]) -> RealMatrix {
    RealMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn five() -> (RealMatrix, RealJordanDecomposition) {
    let a = load_matrix("example_5x5.txt");
    let d = load_factorization("example_5x5.factorization.txt")
        .into_decomposition(&a, &Tolerance::default())
        .unwrap();
    (a, d)
}

fn nine() -> (RealMatrix, RealJordanDecomposition) {
    let a = load_matrix("example_9x9.txt");
    let d = load_factorization("example_9x9.factorization.txt")
        .into_decomposition(&a, &Tolerance::default())
        .unwrap();
    (a, d)
}

#[test]
fn five_by_five_perron_data() {
    let (a, _) = five();
    let tol = Tolerance::default();
    let r = spectral_radius_data(&a, &tol).unwrap();
    assert!((r.rho - 10.0).abs() < 1e-9);
    assert!(r.rho_simple && r.rho_dominant && r.right_positive && r.left_positive);
    assert!(is_primitive(&a, &tol).unwrap());
}

#[test]
fn five_by_five_square_roots() {
    let (a, d) = five();
    let tol = Tolerance::default();
    let cat = enumerate_ev_positive_primary(&d, 2, &tol).unwrap();
    assert_eq!(cat.primary_total, 8);
    assert_eq!(cat.real_primary_count, 4);
    assert_eq!(cat.ev_positive_primary_count, 2);
    assert_eq!(cat.assignments[0].to_string(), "(0,(0,0))");
    assert_eq!(cat.assignments[1].to_string(), "(0,(1,1))");
    for (root, want) in cat.roots.iter().zip([X_J, X_J_PRIME]) {
        let x = root.x.as_real().unwrap();
        assert!(x.max_abs_diff(&printed(&want)) < 5e-4);
        assert!(root.residual <= 1e-8);
        assert!((&mat_power(x, 2).unwrap() - &a).norm_inf() <= 1e-8);
    }
    assert!(!cat.derogatory);

    // sweep over all eight primary assignments: four real, two eventually positive
    let sweep: Vec<_> = all_primary_assignments(&d, 2)
        .unwrap()
        .iter()
        .map(|asg| assemble_primary_root(&d, asg, &tol).unwrap())
        .collect();
    assert_eq!(sweep.len(), 8);
    assert_eq!(sweep.iter().filter(|r| r.is_real).count(), 4);
    assert_eq!(sweep.iter().filter(|r| r.is_eventually_positive).count(), 2);
    assert!(sweep.iter().all(|r| r.residual <= 1e-8 * a.norm_inf()));
}

#[test]
fn five_by_five_cube_roots() {
    let (a, d) = five();
    let cat = enumerate_ev_positive_primary(&d, 3, &Tolerance::default()).unwrap();
    assert_eq!(cat.roots.len(), 3);
    for r in &cat.roots {
        let x3 = mat_power(r.x.as_real().unwrap(), 3).unwrap();
        assert!((&x3 - &a).max_abs() <= 1e-8);
    }
}

#[test]
fn five_by_five_is_not_derogatory() {
    let (_, d) = five();
    let a = BranchAssignment::principal(&d, 2).unwrap();
    assert!(matches!(
        enumerate_nonprimary_family(&d, &a, &[1], &Tolerance::default()),
        Err(Error::NotDerogatory)
    ));
}

#[test]
fn nine_by_nine_primitive_with_index_one() {
    let (a, _) = nine();
    let tol = Tolerance::default();
    assert!(is_primitive(&a, &tol).unwrap());
    assert_eq!(power_index(&a, 10, &tol).unwrap().index(), Some(1));
}

fn nonprimary_assignment(d: &RealJordanDecomposition) -> BranchAssignment {
    BranchAssignment::new(d, 2, vec![0], vec![PairIndex::new(0, 0), PairIndex::new(1, 1)]).unwrap()
}

#[test]
fn nine_by_nine_identity_commutant() {
    let (a, d) = nine();
    let tol = Tolerance::default();
    let asg = nonprimary_assignment(&d);
    assert!(!asg.primary);
    let u = CommutantParameter::new(RealMatrix::identity(9), &d, &tol).unwrap();
    let r = assemble_nonprimary_root(&d, &asg, &u, &tol).unwrap();
    assert!(r.is_real && r.is_eventually_positive);
    assert!(r.residual <= 1e-8 * a.norm_inf().max(1.0));
}

/// The displayed nine-parameter commutant template.
fn template(u: [f64; 9]) -> RealMatrix {
    let c = |a: f64, b: f64| [[a, b], [-b, a]];
    let mut m = RealMatrix::zeros(9, 9);
    m[(0, 0)] = u[0];
    let put = |m: &mut RealMatrix, r0: usize, c0: usize, a: f64, b: f64| {
        let block = c(a, b);
        for (i, row) in block.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(r0 + i, c0 + j)] = v;
            }
        }
    };
    for (br, (a1, b1, a2, b2)) in [(1, (u[1], u[2], u[3], u[4])), (5, (u[5], u[6], u[7], u[8]))] {
        put(&mut m, br, 1, a1, b1);
        put(&mut m, br + 2, 3, a1, b1);
        put(&mut m, br, 5, a2, b2);
        put(&mut m, br + 2, 7, a2, b2);
        m[(br, 3)] = 1.0;
        m[(br + 1, 4)] = 1.0;
        m[(br, 7)] = 1.0;
        m[(br + 1, 8)] = 1.0;
    }
    m
}

#[test]
fn nine_by_nine_template_commutant() {
    let (a, d) = nine();
    let tol = Tolerance::default();
    let u = template([1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    let j = d.j_real();
    assert!((&(&u * &j) - &(&j * &u)).max_abs() == 0.0);
    let param = CommutantParameter::new(u, &d, &tol).unwrap();
    let r = assemble_nonprimary_root(&d, &nonprimary_assignment(&d), &param, &tol).unwrap();
    assert!(r.is_real && r.is_eventually_positive);
    assert!(r.residual <= 1e-8 * a.norm_inf().max(1.0));
}

#[test]
fn nine_by_nine_commutant_shape() {
    let (_, d) = nine();
    let basis = commutant_basis(&d);
    assert_eq!(basis.len(), 17);
    for u in &basis {
        for i in 1..9 {
            assert!(u[(0, i)].abs() < 1e-12 && u[(i, 0)].abs() < 1e-12);
        }
        // each 4x4 sub-block is [[C(a), C(b)], [0, C(a)]]
        for br in [1, 5] {
            for bc in [1, 5] {
                let s = u.submatrix(br, bc, 4, 4);
                for (i, j) in [(2, 0), (2, 1), (3, 0), (3, 1)] {
                    assert!(s[(i, j)].abs() < 1e-12);
                }
                assert!((s[(0, 0)] - s[(1, 1)]).abs() < 1e-12 && (s[(0, 1)] + s[(1, 0)]).abs() < 1e-12);
                assert!((s[(0, 0)] - s[(2, 2)]).abs() < 1e-12 && (s[(0, 1)] - s[(2, 3)]).abs() < 1e-12);
                assert!((s[(0, 2)] - s[(1, 3)]).abs() < 1e-12 && (s[(0, 3)] + s[(1, 2)]).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn nine_by_nine_sampled_family() {
    let (a, d) = nine();
    let tol = Tolerance::default();
    let asg = nonprimary_assignment(&d);
    let reports = enumerate_nonprimary_family(&d, &asg, &[1, 2, 3], &tol).unwrap();
    assert_eq!(reports.len(), 3);
    for r in &reports {
        assert!(r.is_real && r.is_eventually_positive);
        assert!(r.residual <= 1e-8 * a.norm_inf().max(1.0));
    }
    let bad = BranchAssignment::new(&d, 2, vec![1], vec![PairIndex::new(0, 0), PairIndex::new(1, 1)]).unwrap();
    assert!(matches!(
        enumerate_nonprimary_family(&d, &bad, &[1], &tol),
        Err(Error::InvalidAssignment(_))
    ));
}
