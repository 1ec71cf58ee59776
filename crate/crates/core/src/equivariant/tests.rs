use super::*;
use crate::kernel::int;
use num_traits::Zero;
use proptest::prelude::*;

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("e{i}")).collect()
}

fn one_var(degrees: Vec<i64>, terms: &[(u32, Vec<(usize, usize, Rational)>)]) -> UComplex {
    let n = degrees.len();
    let t = terms
        .iter()
        .map(|(e, m)| (vec![*e], matrix(n, m)))
        .collect();
    UComplex::new(names(n), degrees, 1, t).unwrap()
}

#[test]
fn regular_module_gives_q_in_degree_zero() {
    let t = koszul_t(&regular_lambda()).unwrap();
    let m = t.module().unwrap();
    assert_eq!(m.to_string(), "Q in degree 0");
    assert_eq!(t.at_zero().unwrap(), regular_lambda().cohomology().unwrap());
    assert_eq!(t.at_zero().unwrap(), vec![(0, 1), (1, 1)]);
}

#[test]
fn trivial_h_gives_free_module() {
    let n = MixedComplex::trivial(vec!["1".into(), "w".into()], vec![0, 2], 1).unwrap();
    let m = koszul_t(&n).unwrap().module().unwrap();
    assert_eq!(m.free, vec![0, 2]);
    assert!(m.torsion.is_empty());
    assert_eq!(m.to_string(), "Q[u] in degree 0 ⊕ Q[u] in degree 2");
}

#[test]
fn koszul_h_round_trips() {
    let free = one_var(vec![0], &[]);
    let h = koszul_h(&free).unwrap();
    assert_eq!(h.cohomology().unwrap(), vec![(0, 1)]);
    assert_eq!(koszul_t(&h).unwrap().module().unwrap().free, vec![0]);

    // Q[u]a → Q[u]b, a ↦ u b resolves Q[u]/u
    let quotient = one_var(vec![1, 0], &[(1, vec![(1, 0, int(1))])]);
    let back = koszul_t(&koszul_h(&quotient).unwrap()).unwrap();
    assert_eq!(back.module().unwrap(), quotient.module().unwrap());
    assert_eq!(quotient.module().unwrap().torsion, vec![(0, 1)]);

    let zero = one_var(vec![], &[]);
    assert!(koszul_t(&koszul_h(&zero).unwrap())
        .unwrap()
        .module()
        .unwrap()
        .is_zero());

    let squared = one_var(vec![3, 0], &[(2, vec![(1, 0, int(1))])]);
    assert_eq!(koszul_h(&squared), Err(EquivariantError::NotULinear(2)));
    assert_eq!(squared.module().unwrap().torsion, vec![(0, 2)]);
}

#[test]
fn broken_mixed_complex_names_witness() {
    // d(a) = c and h(c) = e, so (d h + h d)(a) = e
    let n = 4;
    let d = matrix(n, &[(1, 0, int(1))]);
    let h = matrix(n, &[(2, 1, int(1))]);
    let err = MixedComplex::new(
        vec!["a".into(), "c".into(), "e".into(), "x".into()],
        vec![0, 1, 0, 5],
        d,
        vec![h],
    );
    match err {
        Err(EquivariantError::Relation { relation, witness }) => {
            assert!(relation.starts_with("d h1"));
            assert!(witness.contains('a'));
        }
        other => panic!("unexpected {other:?}"),
    }
    let bad_degree = MixedComplex::new(names(2), vec![0, 0], matrix(2, &[(1, 0, int(1))]), vec![]);
    assert!(matches!(bad_degree, Err(EquivariantError::Degree { .. })));
}

#[test]
fn cartan_models() {
    let line = cartan_model(&[vec![1]], 6).unwrap();
    let m = line.complex.module().unwrap();
    assert_eq!(m.free, vec![0]);
    assert!(m.torsion.is_empty());
    for k in 0..8 {
        assert_eq!(line.complex.hilbert(k).unwrap(), usize::from(k % 2 == 0));
    }

    let fixed = cartan_model(&[vec![0]], 5).unwrap();
    assert_eq!(fixed.forms.len(), 11);
    assert_eq!(fixed.complex.module().unwrap().free, vec![0]);

    let plane = cartan_model(&[vec![1, 0], vec![0, 1]], 4).unwrap();
    for k in 0..8i64 {
        let expected = if k % 2 == 0 { (k / 2 + 1) as usize } else { 0 };
        assert_eq!(plane.complex.hilbert(k).unwrap(), expected, "degree {k}");
    }

    // x y is invariant for weights (1, −1)
    let hyper = cartan_model(&[vec![1, -1]], 4).unwrap();
    let flipped = cartan_model(&[vec![-1, 1]], 4).unwrap();
    assert!(hyper.truncated);
    assert!(hyper.forms.len() > 1);
    assert_eq!(
        hyper.complex.module().unwrap(),
        flipped.complex.module().unwrap()
    );
    assert_eq!(hyper.complex.module().unwrap().free, vec![0]);
}

fn p1() -> MixedComplex {
    // v0, v∞ in degree 0, e in degree −1, f in degree −2
    let n = 4;
    let d = matrix(n, &[(1, 2, int(1)), (0, 2, int(-1))]);
    let h = matrix(n, &[(3, 2, int(1))]);
    MixedComplex::new(
        vec!["v0".into(), "vinf".into(), "e".into(), "f".into()],
        vec![0, 0, -1, -2],
        d,
        vec![h],
    )
    .unwrap()
}

fn points(k: usize) -> MixedComplex {
    MixedComplex::trivial((0..k).map(|i| format!("p{i}")).collect(), vec![0; k], 1).unwrap()
}

#[test]
fn localization_fixtures() {
    let u = Poly::var();
    let x = p1();
    assert_eq!(koszul_t(&x).unwrap().module().unwrap().free.len(), 2);

    let mut iota = SparseMatrix::zeros(Ring::Q, 4, 2);
    iota.set(0, 0, Poly::one());
    iota.set(1, 1, Poly::one());
    let v = localize_check(&points(2), &x, &iota, std::slice::from_ref(&u)).unwrap();
    assert!(v.iso_after_localization);
    assert_eq!(v.annihilator, Some(u.clone()));
    assert_eq!(v.cone_cohomology.to_string(), "Q in degree -2");
    // without inverting anything the map is not an isomorphism
    assert!(
        !localize_check(&points(2), &x, &iota, &[])
            .unwrap()
            .iso_after_localization
    );

    let mut one_point = SparseMatrix::zeros(Ring::Q, 4, 1);
    one_point.set(0, 0, Poly::one());
    let wrong = localize_check(&points(1), &x, &one_point, std::slice::from_ref(&u)).unwrap();
    assert!(!wrong.iso_after_localization);
    assert_eq!(wrong.annihilator, None);

    let empty = MixedComplex::trivial(Vec::new(), Vec::new(), 1).unwrap();
    let free = localize_check(
        &empty,
        &regular_lambda(),
        &SparseMatrix::zeros(Ring::Q, 2, 0),
        std::slice::from_ref(&u),
    )
    .unwrap();
    assert!(free.iso_after_localization);
    assert_eq!(free.annihilator, Some(u.clone()));

    let id = matrix(
        4,
        &[
            (0, 0, int(1)),
            (1, 1, int(1)),
            (2, 2, int(1)),
            (3, 3, int(1)),
        ],
    );
    let same = localize_check(&x, &x, &id, &[]).unwrap();
    assert!(same.iso_after_localization);
    assert!(same.cone_cohomology.is_zero());
    assert_eq!(same.annihilator, Some(Poly::one()));

    let not_a_map = matrix(4, &[(0, 0, int(1))]);
    assert!(matches!(
        localize_check(&x, &x, &not_a_map, &[u]),
        Err(EquivariantError::Relation { .. })
    ));
}

/// Standard pieces: a class, an acyclic pair, a free Λ-orbit.
fn standard(pieces: &[(u8, i64)]) -> (Vec<i64>, Vec<(usize, usize)>, Vec<(usize, usize)>) {
    let mut degrees = Vec::new();
    let mut d = Vec::new();
    let mut h = Vec::new();
    for &(kind, k) in pieces {
        let i = degrees.len();
        match kind % 3 {
            0 => degrees.push(k),
            1 => {
                degrees.extend([k, k + 1]);
                d.push((i + 1, i));
            }
            _ => {
                degrees.extend([k, k + 1]);
                h.push((i, i + 1));
            }
        }
    }
    (degrees, d, h)
}

type Dense = Vec<Vec<Rational>>;

fn dense(n: usize, e: &[(usize, usize)]) -> Dense {
    let mut m = vec![vec![Rational::zero(); n]; n];
    for &(i, j) in e {
        m[i][j] = int(1);
    }
    m
}

/// Change of basis e_j ← e_j + c e_i: M ↦ E M E⁻¹ with E = I + c E_ij.
fn conjugate(m: &mut Dense, i: usize, j: usize, c: &Rational) {
    let n = m.len();
    // right multiply by E⁻¹ = I − c E_ij: column j −= c column i
    for row in m.iter_mut() {
        let v = &row[i] * c;
        row[j] -= v;
    }
    // left multiply by E: row i += c row j
    for col in 0..n {
        let v = &m[j][col] * c;
        m[i][col] += v;
    }
}

fn to_sparse(m: &Dense) -> SparseMatrix {
    let mut e = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                e.push((i, j, v.clone()));
            }
        }
    }
    matrix(m.len(), &e)
}

fn random_mixed(pieces: &[(u8, i64)], ops: &[(usize, usize, i64)]) -> MixedComplex {
    let (degrees, d, h) = standard(pieces);
    let n = degrees.len();
    let (mut d, mut h) = (dense(n, &d), dense(n, &h));
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i != j && degrees[i] == degrees[j] {
            conjugate(&mut d, i, j, &int(c));
            conjugate(&mut h, i, j, &int(c));
        }
    }
    MixedComplex::new(names(n), degrees, to_sparse(&d), vec![to_sparse(&h)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn koszul_properties(
        pieces in prop::collection::vec((0u8..3, -2i64..3), 1..5),
        ops in prop::collection::vec((0usize..10, 0usize..10, -3i64..4), 0..8),
    ) {
        let n = random_mixed(&pieces, &ops);
        let t = koszul_t(&n).unwrap();
        prop_assert!(t.square().unwrap().is_empty());
        prop_assert_eq!(t.at_zero().unwrap(), n.cohomology().unwrap());
        let m = t.module().unwrap();
        let lo = n.degrees.iter().min().copied().unwrap_or(0);
        for k in lo - 1..lo + 8 {
            prop_assert_eq!(m.dim(k), t.hilbert(k).unwrap());
        }
        // classes of the standard pieces: one free per class, one Q per orbit
        let classes = pieces.iter().filter(|p| p.0 % 3 == 0).count();
        let orbits = pieces.iter().filter(|p| p.0 % 3 == 2).count();
        prop_assert_eq!(m.free.len(), classes);
        prop_assert_eq!(m.torsion.len(), orbits);
        let back = koszul_t(&koszul_h(&t).unwrap()).unwrap();
        prop_assert_eq!(back.module().unwrap(), m);
    }
}
