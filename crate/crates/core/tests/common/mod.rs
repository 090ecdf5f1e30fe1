#![allow(dead_code)]

use std::collections::BTreeMap;

use latin_equitable::inflation::{inflate, InflationSpec};
use latin_equitable::perfect::{corner_preimage, cyclic_isotopies, lift_set};
use latin_equitable::{CellSet, Isotopy, LatinSquare, Permutation};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn klein() -> LatinSquare {
    LatinSquare::validate(&[vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]]).unwrap()
}

/// Order-5 square that is not isotopic to the cyclic group.
pub fn non_cyclic5() -> LatinSquare {
    LatinSquare::validate(&[
        vec![0, 1, 2, 3, 4],
        vec![1, 0, 4, 2, 3],
        vec![2, 3, 0, 4, 1],
        vec![3, 4, 1, 0, 2],
        vec![4, 2, 3, 1, 0],
    ])
    .unwrap()
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::new(v).unwrap()
}

pub fn random_isotopy(n: usize, rng: &mut impl Rng) -> Isotopy {
    Isotopy::new(
        random_permutation(n, rng),
        random_permutation(n, rng),
        random_permutation(n, rng),
    )
}

/// A Latin square filled cell by cell with randomly ordered letters.
pub fn random_latin_square(n: usize, rng: &mut impl Rng) -> LatinSquare {
    fn fill(v: usize, n: usize, cells: &mut [usize], rows: &mut [u64], cols: &mut [u64], rng: &mut impl Rng) -> bool {
        if v == n * n {
            return true;
        }
        let (r, c) = (v / n, v % n);
        let mut letters: Vec<usize> = (0..n)
            .filter(|&l| rows[r] >> l & 1 == 0 && cols[c] >> l & 1 == 0)
            .collect();
        letters.shuffle(rng);
        for l in letters {
            cells[v] = l;
            rows[r] |= 1 << l;
            cols[c] |= 1 << l;
            if fill(v + 1, n, cells, rows, cols, rng) {
                return true;
            }
            rows[r] &= !(1 << l);
            cols[c] &= !(1 << l);
        }
        false
    }
    let mut cells = vec![0; n * n];
    assert!(fill(0, n, &mut cells, &mut vec![0; n], &mut vec![0; n], rng));
    LatinSquare::from_flat(n, cells).unwrap()
}

/// Random base of order `t`, random disjoint alphabets, and an independent
/// random Latin block for every letter occurrence.
pub fn random_inflation(base: LatinSquare, s: usize, rng: &mut impl Rng) -> InflationSpec {
    let t = base.order();
    let mut symbols: Vec<usize> = (0..s * t).collect();
    symbols.shuffle(rng);
    let alphabets: Vec<Vec<usize>> = symbols.chunks(s).map(|c| c.to_vec()).collect();
    let mut blocks = BTreeMap::new();
    for (letter, alphabet) in alphabets.iter().enumerate() {
        for occurrence in 0..t {
            let sq = random_latin_square(s, rng);
            let grid = sq
                .rows()
                .into_iter()
                .map(|row| row.into_iter().map(|x| alphabet[x]).collect())
                .collect();
            blocks.insert((letter, occurrence), grid);
        }
    }
    InflationSpec::new(base, s, alphabets, blocks).unwrap()
}

/// A square of order `s·t` with a slender `(n-3)`-perfect set, scrambled
/// by a random isotopy.
pub fn random_corner_instance(t: usize, s: usize, rng: &mut impl Rng) -> (LatinSquare, CellSet) {
    let base_iso = random_isotopy(t, rng);
    let base = LatinSquare::cyclic(t).relabel(&base_iso).unwrap();
    let spec = random_inflation(base.clone(), s, rng);
    let isos = cyclic_isotopies(&base);
    let iso = isos.choose(rng).unwrap();
    let set = lift_set(&spec, &corner_preimage(iso, t));
    let sq = inflate(&spec);
    let scramble = random_isotopy(s * t, rng);
    (sq.relabel(&scramble).unwrap(), scramble.map_set(&set))
}

pub fn random_subset(n: usize, size: usize, rng: &mut impl Rng) -> CellSet {
    let mut cells: Vec<usize> = (0..n * n).collect();
    cells.shuffle(rng);
    CellSet::from_indices(n, cells.into_iter().take(size))
}

/// Orders `n = s·t` with `t ≥ 2`, `n ≤ 9`, as `(t, s)` pairs.
pub const CORNER_SHAPES: &[(usize, usize)] = &[
    (2, 1),
    (3, 1),
    (4, 1),
    (5, 1),
    (6, 1),
    (7, 1),
    (8, 1),
    (9, 1),
    (2, 2),
    (2, 3),
    (3, 2),
    (2, 4),
    (4, 2),
    (3, 3),
];

/// Characteristic polynomial `det(xI - M)` by Faddeev–LeVerrier, exact in
/// i128. Coefficients from `x^r` down to the constant term.
pub fn char_poly(m: &[Vec<i64>]) -> Vec<i128> {
    let r = m.len();
    let a: Vec<Vec<i128>> = m.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let mul = |x: &[Vec<i128>], y: &[Vec<i128>]| -> Vec<Vec<i128>> {
        (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        (0..r).fold(0i128, |acc, k| {
                            acc.checked_add(x[i][k].checked_mul(y[k][j]).unwrap()).unwrap()
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![1i128];
    // M_0 = 0, c_r = 1; M_k = A M_{k-1} + c_{r-k+1} I; c_{r-k} = -tr(A M_k)/k
    let mut mk = vec![vec![0i128; r]; r];
    for k in 1..=r {
        let prev = *coeffs.last().unwrap();
        let mut next = mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += prev;
        }
        mk = next;
        let am = mul(&a, &mk);
        let tr: i128 = (0..r).map(|i| am[i][i]).sum();
        assert_eq!(tr % k as i128, 0);
        coeffs.push(-tr / k as i128);
    }
    coeffs
}

/// Coefficients of `∏ (x - root)^mult`, highest degree first.
pub fn poly_from_roots(roots: &[(i64, usize)]) -> Vec<i128> {
    let mut p = vec![1i128];
    for &(root, mult) in roots {
        for _ in 0..mult {
            let mut q = vec![0i128; p.len() + 1];
            for (i, &c) in p.iter().enumerate() {
                q[i] += c;
                q[i + 1] -= c * root as i128;
            }
            p = q;
        }
    }
    p
}
