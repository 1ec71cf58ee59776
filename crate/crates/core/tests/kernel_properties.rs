//! Invariants of the linear-algebra kernel on randomly generated complexes.

use proptest::prelude::*;

use chiralg::kernel::{
    cohomology, fibre_dimensions, int, solve_and_rank, FiniteComplex, Poly, Rational, Ring,
    SparseMatrix,
};

/// A piece of a standard complex: a lone class in degree k, or a pair
/// x_k ↦ f·y_{k+1} with f a unit (acyclic) or u^e (torsion over Q[u]).
#[derive(Clone, Debug)]
enum Piece {
    Class(usize),
    Pair(usize, u32),
}

fn piece(levels: usize) -> impl Strategy<Value = Piece> {
    prop_oneof![
        (0..levels).prop_map(Piece::Class),
        (0..levels - 1, 0u32..3).prop_map(|(k, e)| Piece::Pair(k, e)),
    ]
}

struct Built {
    dims: Vec<usize>,
    diffs: Vec<SparseMatrix>,
}

fn build(ring: &Ring, levels: usize, pieces: &[Piece]) -> Built {
    let mut dims = vec![0usize; levels];
    let mut arrows = Vec::new();
    for p in pieces {
        match *p {
            Piece::Class(k) => dims[k] += 1,
            Piece::Pair(k, e) => {
                let (i, j) = (dims[k], dims[k + 1]);
                dims[k] += 1;
                dims[k + 1] += 1;
                // over Q only units survive
                let f = if ring.is_field() { Poly::from_int(e as i64 + 1) } else { Poly::monomial(int(1), e as usize) };
                arrows.push((k, j, i, f));
            }
        }
    }
    let mut diffs: Vec<SparseMatrix> = (0..levels - 1).map(|k| SparseMatrix::zeros(ring.clone(), dims[k + 1], dims[k])).collect();
    for (k, row, col, f) in arrows {
        diffs[k].set(row, col, f);
    }
    Built { dims, diffs }
}

/// Change of basis e_j ← e_j + c e_i inside degree k.
fn shear(b: &mut Built, k: usize, i: usize, j: usize, c: i64) {
    if i == j || b.dims[k] == 0 {
        return;
    }
    let (i, j) = (i % b.dims[k], j % b.dims[k]);
    if i == j {
        return;
    }
    let c = Poly::from_int(c);
    if k < b.diffs.len() {
        // outgoing: column j += c column i
        let d = &mut b.diffs[k];
        for r in 0..d.nrows() {
            let v = &d.get(r, i) * &c;
            d.add_to(r, j, &v);
        }
    }
    if k > 0 {
        // incoming: row i −= c row j
        let d = &mut b.diffs[k - 1];
        for col in 0..d.ncols() {
            let v = -(&d.get(j, col) * &c);
            d.add_to(i, col, &v);
        }
    }
}

fn complex(ring: Ring, lo: i64, levels: usize, pieces: &[Piece], shears: &[(usize, usize, usize, i64)]) -> FiniteComplex {
    let mut b = build(&ring, levels, pieces);
    for &(k, i, j, c) in shears {
        shear(&mut b, k % levels, i, j, c);
    }
    FiniteComplex::new(ring, lo, b.dims, b.diffs).expect("d² = 0 by construction")
}

fn alternating(h: &[(i64, usize)]) -> i64 {
    h.iter().map(|(d, n)| if d.rem_euclid(2) == 0 { *n as i64 } else { -(*n as i64) }).sum()
}

fn ranks(c: &FiniteComplex) -> Vec<(i64, usize)> {
    cohomology(c).unwrap().iter().map(|h| (h.degree, h.free_rank)).collect()
}

/// Determinant by cofactor expansion along the first row.
fn det(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    let mut total = 0;
    for (j, a) in m[0].iter().enumerate() {
        if *a == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect())
            .collect();
        let s = if j % 2 == 0 { 1 } else { -1 };
        total += s * a * det(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// The largest k with a nonzero k×k minor.
fn minor_rank(m: &[Vec<i64>]) -> usize {
    let (r, c) = (m.len(), m.first().map_or(0, Vec::len));
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let sub: Vec<Vec<i128>> = rows.iter().map(|&i| cols.iter().map(|&j| m[i][j] as i128).collect()).collect();
                if det(&sub) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

fn shears() -> impl Strategy<Value = Vec<(usize, usize, usize, i64)>> {
    prop::collection::vec((0usize..4, 0usize..8, 0usize..8, -3i64..4), 0..10)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn euler_characteristic_is_preserved(
        pieces in prop::collection::vec(piece(4), 0..8),
        sh in shears(),
        lo in -2i64..3,
    ) {
        let c = complex(Ring::Q, lo, 4, &pieces, &sh);
        let h = ranks(&c);
        prop_assert_eq!(alternating(&h), c.euler_characteristic());
        // each lone class contributes one dimension, pairs cancel
        for (d, n) in &h {
            let classes = pieces.iter().filter(|p| matches!(p, Piece::Class(k) if lo + *k as i64 == *d)).count();
            prop_assert_eq!(*n, classes);
        }
    }

    #[test]
    fn cohomology_ignores_basis_order(
        pieces in prop::collection::vec(piece(3), 1..7),
        sh in shears(),
        degree in 0usize..3,
        seed in any::<u64>(),
    ) {
        let c = complex(Ring::Q, 0, 3, &pieces, &sh);
        let n = c.dim(degree as i64);
        let mut perm: Vec<usize> = (0..n).collect();
        // Fisher–Yates driven by the seed
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = c.permute_basis(degree as i64, &perm);
        prop_assert_eq!(ranks(&p), ranks(&c));
    }

    #[test]
    fn fibres_follow_universal_coefficients(
        pieces in prop::collection::vec(piece(4), 0..7),
        sh in shears(),
        a in -2i64..3,
    ) {
        let c = complex(Ring::U, 0, 4, &pieces, &sh);
        let h = cohomology(&c).unwrap();
        let x = int(a);
        let direct = ranks(&c.specialize(&x));
        prop_assert_eq!(fibre_dimensions(&h, &x), direct);
        // generic rank counts only the lone classes
        let free: usize = h.iter().map(|d| d.free_rank).sum();
        prop_assert_eq!(free, pieces.iter().filter(|p| matches!(p, Piece::Class(_))).count());
    }

    #[test]
    fn rank_matches_minor_oracle(
        rows in prop::collection::vec(prop::collection::vec(-2i64..3, 5), 0..5),
    ) {
        let q: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        let m = SparseMatrix::from_rationals(&q);
        let s = solve_and_rank(&m).unwrap();
        prop_assert_eq!(s.rank, minor_rank(&rows));
        if !rows.is_empty() {
            prop_assert_eq!(s.kernel.len(), 5 - s.rank);
            for v in &s.kernel {
                prop_assert!(m.apply(v).is_empty());
            }
        }
    }
}
