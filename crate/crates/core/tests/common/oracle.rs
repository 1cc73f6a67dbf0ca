//! Independent reference computations on small `i128` data.
//!
//! Nothing here calls the library's linear algebra.

#![allow(dead_code)]

pub type Mat = Vec<Vec<i128>>;

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![0; c]; r]
}

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

pub fn mul(a: &Mat, b: &Mat, inner: usize) -> Mat {
    let (r, c) = (a.len(), b.first().map_or(0, Vec::len));
    let mut out = zeros(r, c);
    for i in 0..r {
        for k in 0..inner {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..c {
                out[i][j] = out[i][j].checked_add(a[i][k].checked_mul(b[k][j]).unwrap()).unwrap();
            }
        }
    }
    out
}

/// Determinant by cofactor expansion.
pub fn det(m: &Mat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Mat = m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| *v).collect()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// Invariant factors of the cokernel-style diagonalization of `m` (`rows x cols`):
/// nonzero diagonal entries, positive, in divisibility order.
pub fn smith_diagonal(m: &Mat, cols: usize) -> Vec<i128> {
    let mut a: Mat = m.clone();
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut changed = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] -= q * a[t][j];
                    }
                }
                if a[i][t] != 0 {
                    changed = true;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for r in a.iter_mut().skip(t) {
                        r[j] -= q * r[t];
                    }
                }
                if a[t][j] != 0 {
                    changed = true;
                }
            }
            if !changed {
                // pivot must divide the rest of the block
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] += a[i][j];
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for r in a.iter_mut() {
                r.swap(t, best.1);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// Unimodular column reduction of `a` (`rows x cols`): returns `(reduced, v, v_inv)` with
/// `reduced = a · v` in column echelon form.
fn column_echelon(a: &Mat, cols: usize) -> (Mat, Mat, Mat) {
    let rows = a.len();
    let mut m = a.clone();
    let mut v = identity(cols);
    let mut vi = identity(cols);
    let mut lead = 0;
    for r in 0..rows {
        if lead == cols {
            break;
        }
        loop {
            let nz: Vec<usize> = (lead..cols).filter(|&j| m[r][j] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    swap_cols(&mut m, &mut v, &mut vi, lead, j);
                    lead += 1;
                }
                break;
            }
            let k = *nz.iter().min_by_key(|&&j| m[r][j].abs()).unwrap();
            swap_cols(&mut m, &mut v, &mut vi, lead, k);
            for j in lead + 1..cols {
                let q = m[r][j] / m[r][lead];
                if q != 0 {
                    add_col(&mut m, &mut v, &mut vi, j, lead, -q);
                }
            }
        }
    }
    (m, v, vi)
}

fn swap_cols(m: &mut Mat, v: &mut Mat, vi: &mut Mat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in m.iter_mut().chain(v.iter_mut()) {
        r.swap(a, b);
    }
    vi.swap(a, b);
}

/// column `dst += c · column src`; the inverse gets `row src -= c · row dst`.
fn add_col(m: &mut Mat, v: &mut Mat, vi: &mut Mat, dst: usize, src: usize, c: i128) {
    for r in m.iter_mut().chain(v.iter_mut()) {
        r[dst] = r[dst].checked_add(c.checked_mul(r[src]).unwrap()).unwrap();
    }
    let n = vi[0].len();
    for j in 0..n {
        vi[src][j] = vi[src][j].checked_sub(c.checked_mul(vi[dst][j]).unwrap()).unwrap();
    }
}

/// `(torsion, rank)` of `Hⁿ = ker dₙ / im dₙ₋₁` for groups `⊕ ℤ/mᵢ` (`mᵢ = 0` free) given
/// coordinatewise. `d_in: Cⁿ⁻¹ → Cⁿ` and `d_out: Cⁿ → Cⁿ⁺¹` act on ambient coordinates.
pub fn cohomology(d_in: &Mat, cols_in: usize, d_out: &Mat, moduli: &[i128], moduli_next: &[i128]) -> (Vec<i128>, usize) {
    let k = moduli.len();
    // ker: (x, y) with d_out x - diag(m') y = 0 over the torsion rows of Cⁿ⁺¹
    let tors: Vec<usize> = (0..moduli_next.len()).filter(|&i| moduli_next[i] != 0).collect();
    let width = k + tors.len();
    let a: Mat = (0..moduli_next.len())
        .map(|i| {
            let mut row = d_out[i].clone();
            row.extend(tors.iter().map(|&t| if t == i { -moduli_next[i] } else { 0 }));
            row
        })
        .collect();
    let (red, v, vi) = column_echelon(&a, width);
    let kernel_cols: Vec<usize> = (0..width).filter(|&j| red.iter().all(|r| r[j] == 0)).collect();
    // boundaries plus relations, lifted into the kernel and written in the kernel basis
    let mut gens: Vec<Vec<i128>> = (0..cols_in).map(|j| (0..k).map(|i| d_in[i][j]).collect()).collect();
    for i in 0..k {
        if moduli[i] != 0 {
            let mut e = vec![0; k];
            e[i] = moduli[i];
            gens.push(e);
        }
    }
    let mut coords: Mat = Vec::new();
    for b in &gens {
        let db: Vec<i128> = (0..moduli_next.len()).map(|i| (0..k).map(|j| d_out[i][j] * b[j]).sum()).collect();
        let mut w = b.clone();
        for &t in &tors {
            assert_eq!(db[t] % moduli_next[t], 0, "generator is not a cycle");
            w.push(db[t] / moduli_next[t]);
        }
        for (i, &x) in db.iter().enumerate() {
            if moduli_next[i] == 0 {
                assert_eq!(x, 0, "generator is not a cycle");
            }
        }
        let c: Vec<i128> = (0..width).map(|r| (0..width).map(|j| vi[r][j] * w[j]).sum()).collect();
        for j in 0..width {
            if !kernel_cols.contains(&j) {
                assert_eq!(c[j], 0, "lift left the kernel");
            }
        }
        coords.push(kernel_cols.iter().map(|&j| c[j]).collect());
    }
    let _ = v;
    let z = kernel_cols.len();
    // rows = kernel coordinates, columns = generators
    let y: Mat = (0..z).map(|r| coords.iter().map(|c| c[r]).collect()).collect();
    let diag = smith_diagonal(&y, gens.len());
    let torsion: Vec<i128> = diag.iter().copied().filter(|&d| d > 1).collect();
    (torsion, z - diag.len())
}

/// A finite group by multiplication table.
pub struct Table<'a>(pub &'a [Vec<usize>]);

impl Table<'_> {
    pub fn id(&self) -> usize {
        (0..self.0.len()).find(|&e| (0..self.0.len()).all(|x| self.0[e][x] == x)).unwrap()
    }

    pub fn inv(&self, a: usize) -> usize {
        let e = self.id();
        (0..self.0.len()).find(|&b| self.0[a][b] == e).unwrap()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.0[a][b]
    }
}

/// `π¹` by exhaustive search: cocycles `x` with `(∂⁰x)(∂¹x)⁻¹(∂²x) = 1`, orbits of
/// `g·x = (∂¹g) x (∂⁰g)⁻¹` by flood fill. Returns `(orbit count, basepoint orbit)`.
pub fn pi1_orbits(g1: Table, g2: Table, d10: &[usize], d11: &[usize], d20: &[usize], d21: &[usize], d22: &[usize], g0_order: usize) -> (usize, Vec<usize>) {
    let n1 = g1.0.len();
    let cocycle: Vec<bool> = (0..n1).map(|x| g2.mul(g2.mul(d20[x], g2.inv(d21[x])), d22[x]) == g2.id()).collect();
    let act = |g: usize, x: usize| g1.mul(g1.mul(d11[g], x), g1.inv(d10[g]));
    let mut label = vec![usize::MAX; n1];
    let mut count = 0;
    for start in 0..n1 {
        if !cocycle[start] || label[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        label[start] = count;
        while let Some(x) = stack.pop() {
            for g in 0..g0_order {
                let y = act(g, x);
                if label[y] == usize::MAX {
                    label[y] = count;
                    stack.push(y);
                }
            }
        }
        count += 1;
    }
    let base = label[g1.id()];
    let orbit = (0..n1).filter(|&x| label[x] == base).collect();
    (count, orbit)
}

/// Orbit count by Burnside's lemma: the average number of fixed cocycles.
pub fn pi1_burnside(g1: Table, g2: Table, d10: &[usize], d11: &[usize], d20: &[usize], d21: &[usize], d22: &[usize], g0_order: usize) -> usize {
    let n1 = g1.0.len();
    let cocycles: Vec<usize> = (0..n1).filter(|&x| g2.mul(g2.mul(d20[x], g2.inv(d21[x])), d22[x]) == g2.id()).collect();
    let fixed: usize = (0..g0_order)
        .map(|g| cocycles.iter().filter(|&&x| g1.mul(g1.mul(d11[g], x), g1.inv(d10[g])) == x).count())
        .sum();
    assert_eq!(fixed % g0_order, 0, "Burnside count is not an integer");
    fixed / g0_order
}

/// `Hˢ(ℤ/n; ℤ)` with trivial action: `ℤ, 0, ℤ/n, 0, ℤ/n, …` as `(torsion, rank)`.
pub fn cyclic_group_cohomology_z(n: i128, s: usize) -> (Vec<i128>, usize) {
    match s {
        0 => (vec![], 1),
        s if s % 2 == 1 => (vec![], 0),
        _ => (if n > 1 { vec![n] } else { vec![] }, 0),
    }
}

/// `Hˢ(ℤ/n; ℤ/m)` with trivial action: `ℤ/m` then `ℤ/gcd(n, m)` in every positive degree.
pub fn cyclic_group_cohomology_zm(n: i128, m: i128, s: usize) -> Vec<i128> {
    let g = if s == 0 { m } else { gcd(n, m) };
    if g > 1 {
        vec![g]
    } else {
        vec![]
    }
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    gcd(a, b)
}
