//! Smith normal form over Q[l].

use super::polymatrix::PolyMatrix;
use super::unipoly::UniPoly;

fn min_degree_entry(m: &[Vec<UniPoly>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, e) in row.iter().enumerate().skip(t) {
            if let Some(d) = e.degree() {
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn bring_to(m: &mut [Vec<UniPoly>], t: usize, (i, j): (usize, usize)) {
    m.swap(t, i);
    if j != t {
        for row in m.iter_mut() {
            row.swap(t, j);
        }
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` in canonical form, where `r` is
/// the rank over Q(l). Pivot choice: nonzero entry of minimal degree, ties
/// broken by (row, col) order.
pub fn smith_form(input: &PolyMatrix) -> Vec<UniPoly> {
    let mut m = input.rows_vec();
    let rows = m.len();
    let cols = input.ncols();
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        let Some(pos) = min_degree_entry(&m, t) else {
            break;
        };
        bring_to(&mut m, t, pos);
        loop {
            // Make the pivot monic; scaling a row by a unit is unimodular.
            let inv = m[t][t].leading().recip();
            if inv != num_traits::One::one() {
                for e in m[t].iter_mut() {
                    *e = e.scale(&inv);
                }
            }
            let mut leftover = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = m[i][t].div_rem(&m[t][t]);
                for j in t..cols {
                    if !m[t][j].is_zero() {
                        m[i][j] = &m[i][j] - &(&q * &m[t][j]);
                    }
                }
                debug_assert_eq!(m[i][t], r);
                leftover |= !r.is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = m[t][j].div_rem(&m[t][t]);
                for row in m.iter_mut().take(rows).skip(t) {
                    if !row[t].is_zero() {
                        row[j] = &row[j] - &(&q * &row[t]);
                    }
                }
                debug_assert_eq!(m[t][j], r);
                leftover |= !r.is_zero();
            }
            if leftover {
                let pos = min_degree_entry(&m, t).expect("nonzero entries remain");
                bring_to(&mut m, t, pos);
                continue;
            }
            // Row and column are clear; enforce divisibility of the rest.
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[t][t].divides(&m[i][j])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        if !m[i][j].is_zero() {
                            m[t][j] = &m[t][j] + &m[i][j];
                        }
                    }
                }
                None => break,
            }
        }
        factors.push(m[t][t].canonical());
    }
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::RatMatrix;

    #[test]
    fn scalar_entry() {
        let m = PolyMatrix::from_entries(vec![vec![UniPoly::from_i64(&[1, 1])]]);
        assert_eq!(smith_form(&m), vec![UniPoly::from_i64(&[1, 1])]);
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(l, l+1) has Smith form (1, l(l+1)).
        let m = PolyMatrix::from_entries(vec![
            vec![UniPoly::var(), UniPoly::zero()],
            vec![UniPoly::zero(), UniPoly::from_i64(&[1, 1])],
        ]);
        assert_eq!(smith_form(&m), vec![UniPoly::one(), UniPoly::from_i64(&[0, 1, 1])]);
    }

    #[test]
    fn jordan_pencil() {
        let a = RatMatrix::from_i64(&[vec![0, 0, 2, 1], vec![0, 0, 0, 2], vec![-2, 0, 0, 0], vec![-1, -2, 0, 0]]);
        let b = RatMatrix::from_i64(&[vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-1, 0, 0, 0], vec![0, -1, 0, 0]]);
        let sq = UniPoly::from_i64(&[4, 4, 1]);
        assert_eq!(smith_form(&PolyMatrix::linear(&a, &b)), vec![UniPoly::one(), UniPoly::one(), sq.clone(), sq]);
    }
}
