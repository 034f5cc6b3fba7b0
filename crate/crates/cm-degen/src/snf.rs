//! Integer normal forms: Smith (invariant factors) and row-style Hermite
//! (canonical coset representatives modulo a row lattice).
//!
//! Matrices here are tiny (one row per AR triangle), so the textbook
//! algorithms are plenty.

/// Nonzero invariant factors `d1 | d2 | ...` of an integer matrix.
pub fn smith_invariant_factors(mat: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i64>> = mat.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // locate a nonzero entry in the remaining block
        let Some((pr, pc)) = ((t..rows).flat_map(|r| (t..cols).map(move |c| (r, c))))
            .filter(|&(r, c)| a[r][c] != 0)
            .min_by_key(|&(r, c)| a[r][c].unsigned_abs())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        // clear row and column t; restart whenever a reduction leaves a
        // remainder, so |a[t][t]| strictly decreases between passes
        let mut dirty = true;
        while dirty {
            dirty = false;
            for r in t + 1..rows {
                let q = a[r][t].div_euclid(a[t][t]);
                for c in t..cols {
                    a[r][c] -= q * a[t][c];
                }
                if a[r][t] != 0 {
                    a.swap(t, r);
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                let q = a[t][c].div_euclid(a[t][t]);
                for row in a.iter_mut().skip(t) {
                    row[c] -= q * row[t];
                }
                if a[t][c] != 0 {
                    for row in a.iter_mut() {
                        row.swap(t, c);
                    }
                    dirty = true;
                }
            }
            // enforce divisibility: fold any non-multiple into column t
            if !dirty {
                'search: for r in t + 1..rows {
                    for c in t + 1..cols {
                        if a[r][c] % a[t][t] != 0 {
                            for cc in t..cols {
                                a[t][cc] += a[r][cc];
                            }
                            dirty = true;
                            break 'search;
                        }
                    }
                }
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}

/// Row Hermite normal form: echelon basis of the row lattice with positive
/// pivots and entries above each pivot reduced into `[0, pivot)`. Zero rows
/// are dropped.
pub fn hermite_normal_form(mat: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = mat.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        loop {
            let Some(pr) = (r..a.len())
                .filter(|&i| a[i][c] != 0)
                .min_by_key(|&i| a[i][c].unsigned_abs())
            else {
                break;
            };
            a.swap(r, pr);
            let mut again = false;
            for i in r + 1..a.len() {
                let q = a[i][c].div_euclid(a[r][c]);
                for j in 0..cols {
                    let s = a[r][j];
                    a[i][j] -= q * s;
                }
                again |= a[i][c] != 0;
            }
            if !again {
                break;
            }
        }
        if r < a.len() && a[r][c] != 0 {
            if a[r][c] < 0 {
                for x in &mut a[r] {
                    *x = -*x;
                }
            }
            for i in 0..r {
                let q = a[i][c].div_euclid(a[r][c]);
                for j in 0..cols {
                    let s = a[r][j];
                    a[i][j] -= q * s;
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Canonical representative of `v` modulo the row lattice spanned by `hnf`
/// (which must be in Hermite normal form).
pub fn reduce_mod_lattice(hnf: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    let mut v = v.to_vec();
    for row in hnf {
        let c = row.iter().position(|&x| x != 0).expect("HNF rows are nonzero");
        let q = v[c].div_euclid(row[c]);
        for (vj, &rj) in v.iter_mut().zip(row) {
            *vj -= q * rj;
        }
    }
    v
}

/// Whether `v` lies in the row lattice spanned by `hnf`.
pub fn in_lattice(hnf: &[Vec<i64>], v: &[i64]) -> bool {
    reduce_mod_lattice(hnf, v).iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_diagonal() {
        let m = vec![vec![2, 0], vec![0, 6]];
        assert_eq!(smith_invariant_factors(&m), vec![2, 6]);
    }

    #[test]
    fn smith_enforces_divisibility() {
        let m = vec![vec![2, 0], vec![0, 3]];
        assert_eq!(smith_invariant_factors(&m), vec![1, 6]);
        let m = vec![vec![4, 0], vec![0, 6]];
        assert_eq!(smith_invariant_factors(&m), vec![2, 12]);
    }

    #[test]
    fn smith_of_rank_deficient() {
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        assert_eq!(smith_invariant_factors(&m), vec![1]);
        let m = vec![vec![0, 0], vec![0, 0]];
        assert!(smith_invariant_factors(&m).is_empty());
    }

    #[test]
    fn smith_textbook_example() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]];
        assert_eq!(smith_invariant_factors(&m), vec![2, 2, 156]);
    }

    #[test]
    fn hnf_shapes() {
        let m = vec![vec![2, 1], vec![0, 3]];
        let h = hermite_normal_form(&m);
        assert_eq!(h, vec![vec![2, 1], vec![0, 3]]);

        let m = vec![vec![3, 0], vec![5, 0]];
        let h = hermite_normal_form(&m);
        assert_eq!(h, vec![vec![1, 0]]);
    }

    #[test]
    fn reduction_and_membership() {
        // lattice 3Z x Z inside Z^2
        let h = hermite_normal_form(&[vec![3, 0], vec![0, 1]]);
        assert_eq!(reduce_mod_lattice(&h, &[7, 5]), vec![1, 0]);
        assert_eq!(reduce_mod_lattice(&h, &[-7, 5]), vec![2, 0]);
        assert!(in_lattice(&h, &[6, -4]));
        assert!(!in_lattice(&h, &[5, 0]));
    }

    #[test]
    fn hnf_and_smith_agree_on_index() {
        // full-rank sublattice: product of invariant factors = product of
        // HNF pivots = lattice index
        let m = vec![vec![4, 1, 0], vec![2, 3, 1], vec![0, 5, 3]];
        let det: i64 = smith_invariant_factors(&m).iter().product();
        let h = hermite_normal_form(&m);
        let pivots: i64 = h
            .iter()
            .map(|r| *r.iter().find(|&&x| x != 0).unwrap())
            .product();
        assert_eq!(det, pivots);
    }
}
