//! Root data of simple Lie types: Cartan matrix, symmetrized form, positive
//! roots in Lyndon order, admissibility of the order l, Killing map.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// An element of the root lattice, in simple-root coordinates.
pub type QDegree = Vec<i64>;

pub fn height(d: &[i64]) -> i64 {
    d.iter().sum()
}

/// μ ≤ ν componentwise.
pub fn deg_le(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn deg_add(a: &[i64], b: &[i64]) -> QDegree {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn deg_sub(a: &[i64], b: &[i64]) -> QDegree {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LieType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// One positive root with its Lyndon data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub deg: QDegree,
    /// Good Lyndon word, letters are simple-root indices.
    pub word: Vec<u8>,
    /// Standard factorization (left, right) as root indices; None for simple roots.
    pub split: Option<(usize, usize)>,
}

impl Root {
    pub fn height(&self) -> i64 {
        height(&self.deg)
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub lie_type: LieType,
    pub rank: usize,
    pub l: u32,
    /// ⟨α_i, α_j⟩ = 2(α_i, α_j)/(α_i, α_i)
    pub cartan: Vec<Vec<i64>>,
    /// (α_i, α_j), with short simple roots of square length 2.
    pub sym: Vec<Vec<i64>>,
    /// Ratio of long to short square lengths.
    pub big_d: i64,
    /// Positive roots in increasing Lyndon order.
    pub roots: Vec<Root>,
    /// Root index of the i-th simple root.
    pub simple: Vec<usize>,
    index: HashMap<QDegree, usize>,
}

impl PartialEq for RootDatum {
    fn eq(&self, o: &Self) -> bool {
        self.lie_type == o.lie_type && self.rank == o.rank && self.l == o.l
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
            LieType::E => 'E',
            LieType::F => 'F',
            LieType::G => 'G',
        };
        write!(f, "{}", c)
    }
}

/// Parse labels like "A2", "b3", "G2".
pub fn parse_type_label(label: &str) -> Result<(LieType, usize)> {
    let label = label.trim();
    let mut chars = label.chars();
    let c = chars.next().ok_or_else(|| Error::Config("empty type label".into()))?;
    let t = match c.to_ascii_uppercase() {
        'A' => LieType::A,
        'B' => LieType::B,
        'C' => LieType::C,
        'D' => LieType::D,
        'E' => LieType::E,
        'F' => LieType::F,
        'G' => LieType::G,
        _ => return Err(Error::Config(format!("unknown Lie type '{}'", label))),
    };
    let rank: usize = chars.as_str().parse().map_err(|_| Error::Config(format!("bad rank in '{}'", label)))?;
    let ok = match t {
        LieType::A => rank >= 1,
        LieType::B | LieType::C => rank >= 2,
        LieType::D => rank >= 4,
        LieType::E => (6..=8).contains(&rank),
        LieType::F => rank == 4,
        LieType::G => rank == 2,
    };
    if !ok {
        return Err(Error::Config(format!("unsupported type '{}'", label)));
    }
    Ok((t, rank))
}

/// Symmetrized form (α_i, α_j) for a simple type in Bourbaki numbering.
fn symmetric_form(t: LieType, n: usize) -> Vec<Vec<i64>> {
    let mut s = vec![vec![0i64; n]; n];
    let link = |s: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        s[i][j] = v;
        s[j][i] = v;
    };
    match t {
        LieType::A => {
            for i in 0..n {
                s[i][i] = 2;
                if i + 1 < n {
                    link(&mut s, i, i + 1, -1);
                }
            }
        }
        LieType::B => {
            // α_n short
            for i in 0..n {
                s[i][i] = if i == n - 1 { 2 } else { 4 };
                if i + 1 < n {
                    link(&mut s, i, i + 1, -2);
                }
            }
        }
        LieType::C => {
            // α_n long
            for i in 0..n {
                s[i][i] = if i == n - 1 { 4 } else { 2 };
                if i + 1 < n {
                    link(&mut s, i, i + 1, if i + 1 == n - 1 { -2 } else { -1 });
                }
            }
        }
        LieType::D => {
            for i in 0..n {
                s[i][i] = 2;
            }
            for i in 0..n - 2 {
                link(&mut s, i, i + 1, -1);
            }
            link(&mut s, n - 3, n - 1, -1);
        }
        LieType::E => {
            // 1-3-4-5-6-(7-8), 2 attached to 4
            for i in 0..n {
                s[i][i] = 2;
            }
            link(&mut s, 0, 2, -1);
            link(&mut s, 1, 3, -1);
            for i in 2..n - 1 {
                link(&mut s, i, i + 1, -1);
            }
        }
        LieType::F => {
            s[0][0] = 4;
            s[1][1] = 4;
            s[2][2] = 2;
            s[3][3] = 2;
            link(&mut s, 0, 1, -2);
            link(&mut s, 1, 2, -2);
            link(&mut s, 2, 3, -1);
        }
        LieType::G => {
            // α_1 short, α_2 long
            s[0][0] = 2;
            s[1][1] = 6;
            link(&mut s, 0, 1, -3);
        }
    }
    s
}

/// Standard factorization of a Lyndon word: w = u v with v the longest proper
/// Lyndon suffix.
fn standard_factorization(w: &[u8]) -> (Vec<u8>, Vec<u8>) {
    for k in 1..w.len() {
        if is_lyndon(&w[k..]) {
            return (w[..k].to_vec(), w[k..].to_vec());
        }
    }
    unreachable!("word of length ≥ 2 has a Lyndon suffix")
}

pub fn is_lyndon(w: &[u8]) -> bool {
    !w.is_empty() && (1..w.len()).all(|k| w[k..] > *w)
}

impl RootDatum {
    pub fn new(lie_type: LieType, rank: usize, l: u32) -> Result<RootDatum> {
        if l < 3 || l.is_multiple_of(2) {
            return Err(Error::Config(format!("order l = {} must be odd and at least 3", l)));
        }
        let sym = symmetric_form(lie_type, rank);
        let cartan: Vec<Vec<i64>> =
            (0..rank).map(|i| (0..rank).map(|j| 2 * sym[i][j] / sym[i][i]).collect()).collect();
        let min_len = (0..rank).map(|i| sym[i][i]).min().unwrap();
        let max_len = (0..rank).map(|i| sym[i][i]).max().unwrap();
        let big_d = max_len / min_len;

        // Positive roots by height, using α-strings: μ + α_i is a root iff
        // p − ⟨μ, α_i^∨⟩ > 0 where p is the largest k with μ − kα_i a root.
        let mut by_height: Vec<Vec<QDegree>> = vec![(0..rank)
            .map(|i| {
                let mut d = vec![0i64; rank];
                d[i] = 1;
                d
            })
            .collect()];
        let mut all: BTreeSet<QDegree> = by_height[0].iter().cloned().collect();
        loop {
            let cur = by_height.last().unwrap();
            let mut next: BTreeSet<QDegree> = BTreeSet::new();
            for mu in cur {
                for i in 0..rank {
                    let mut p = 0i64;
                    let mut t = mu.clone();
                    loop {
                        t[i] -= 1;
                        if all.contains(&t) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair: i64 = (0..rank).map(|j| mu[j] * sym[j][i]).sum();
                    let c = 2 * pair / sym[i][i];
                    if p - c > 0 {
                        let mut nu = mu.clone();
                        nu[i] += 1;
                        next.insert(nu);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            by_height.push(next.into_iter().collect());
        }

        // Good Lyndon words by induction on height.
        let mut words: HashMap<QDegree, Vec<u8>> = HashMap::new();
        for level in &by_height {
            for mu in level {
                if height(mu) == 1 {
                    let i = mu.iter().position(|&x| x == 1).unwrap();
                    words.insert(mu.clone(), vec![i as u8]);
                    continue;
                }
                let mut best: Option<Vec<u8>> = None;
                for beta in all.iter() {
                    if height(beta) >= height(mu) || !deg_le(beta, mu) {
                        continue;
                    }
                    let gamma = deg_sub(mu, beta);
                    let (Some(wb), Some(wg)) = (words.get(beta), words.get(&gamma)) else { continue };
                    if wb < wg {
                        let w: Vec<u8> = wb.iter().chain(wg.iter()).copied().collect();
                        if best.as_ref().is_none_or(|b| w > *b) {
                            best = Some(w);
                        }
                    }
                }
                words.insert(mu.clone(), best.expect("every non-simple root splits"));
            }
        }
        let mut roots: Vec<Root> = all
            .iter()
            .map(|d| Root { deg: d.clone(), word: words[d].clone(), split: None })
            .collect();
        roots.sort_by(|a, b| a.word.cmp(&b.word));
        let index: HashMap<QDegree, usize> = roots.iter().enumerate().map(|(i, r)| (r.deg.clone(), i)).collect();
        let by_word: HashMap<Vec<u8>, usize> = roots.iter().enumerate().map(|(i, r)| (r.word.clone(), i)).collect();
        for r in roots.iter_mut() {
            if r.word.len() > 1 {
                let (u, v) = standard_factorization(&r.word);
                let (Some(&a), Some(&b)) = (by_word.get(&u), by_word.get(&v)) else {
                    return Err(Error::Engine(format!("Lyndon factorization of {:?} leaves the root set", r.word)));
                };
                r.split = Some((a, b));
            }
        }
        let simple = (0..rank)
            .map(|i| {
                let mut d = vec![0i64; rank];
                d[i] = 1;
                index[&d]
            })
            .collect();
        Ok(RootDatum { lie_type, rank, l, cartan, sym, big_d, roots, simple, index })
    }

    /// Build from a label such as "A2".
    pub fn from_label(label: &str, l: u32) -> Result<RootDatum> {
        let (t, n) = parse_type_label(label)?;
        RootDatum::new(t, n, l)
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.lie_type, self.rank)
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root_index(&self, d: &[i64]) -> Option<usize> {
        self.index.get(d).copied()
    }

    /// (μ, ν) for lattice elements.
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.sym[i][j] * b[j];
            }
        }
        s
    }

    /// d_i = (α_i, α_i)/2, so q_{α_i} = q^{d_i}.
    pub fn d(&self, i: usize) -> i64 {
        self.sym[i][i] / 2
    }

    /// (μ, μ)/2 for a root index.
    pub fn root_d(&self, r: usize) -> i64 {
        let d = &self.roots[r].deg;
        self.form(d, d) / 2
    }

    /// Whether l satisfies the admissibility conditions for this type.
    pub fn admissible_order(&self) -> bool {
        let l = self.l;
        if l.is_multiple_of(2) || l < 3 {
            return false;
        }
        match self.lie_type {
            LieType::A | LieType::D | LieType::E => l != 3,
            LieType::B | LieType::C | LieType::F => l != 3 && l != 5,
            LieType::G => !l.is_multiple_of(3) && l != 7,
        }
    }

    /// Values (1−a)²(α,α) + 2(1−a)(α,β) + (β,β), a = ⟨α,β⟩, over simple α ≠ β.
    pub fn serre_exponent_set(&self) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if i == j {
                    continue;
                }
                let n = 1 - self.cartan[i][j];
                out.insert(n * n * self.sym[i][i] + 2 * n * self.sym[i][j] + self.sym[j][j]);
            }
        }
        out
    }

    /// Q-degree (1 − ⟨α_i,α_j⟩)α_i + α_j of the Serre relation for (i, j).
    pub fn serre_degree(&self, i: usize, j: usize) -> QDegree {
        let mut d = vec![0i64; self.rank];
        d[i] += 1 - self.cartan[i][j];
        d[j] += 1;
        d
    }

    /// Killing map matrix (sym form mod l) and its invertibility over Z/l.
    pub fn killing_map(&self) -> (Vec<Vec<i64>>, bool) {
        let l = self.l as i64;
        let m: Vec<Vec<i64>> = self.sym.iter().map(|r| r.iter().map(|x| x.rem_euclid(l)).collect()).collect();
        let det = int_det(&self.sym);
        (m, num_integer::gcd(det, l) == 1)
    }

    /// A decomposition μ = α + ν with α simple (index i), for dp words.
    /// Prefers the Lyndon standard factorization when one factor is simple.
    pub fn simple_bracketing(&self, r: usize) -> Option<(usize, usize)> {
        let (a, b) = self.roots[r].split?;
        let simple_of = |k: usize| self.simple.iter().position(|&s| s == k);
        if let Some(i) = simple_of(a) {
            return Some((i, b));
        }
        if let Some(i) = simple_of(b) {
            return Some((i, a));
        }
        let deg = &self.roots[r].deg;
        (0..self.rank).find_map(|i| {
            let mut nu = deg.clone();
            nu[i] -= 1;
            self.root_index(&nu).map(|k| (i, k))
        })
    }

    /// Highest root height sum Σ_{μ∈Φ+} |μ|.
    pub fn total_root_height(&self) -> i64 {
        self.roots.iter().map(|r| r.height()).sum()
    }
}

/// Determinant of a small integer matrix (Bareiss).
pub fn int_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]) as i64
}
