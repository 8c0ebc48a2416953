//! Normal forms of twists: degree-zero normalization to an alternating form,
//! then elimination of minimal terms on the B side, exact ones by small
//! gauges and nonexact ones (at degrees lμ) by divided-power words.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;

use crate::cohomology::{in_l_roots, BoundingSolver};
use crate::dp_moves::{dp_word_for_root, DpContext, DpWord};
use crate::engine::plus::acc_add;
use crate::engine::{Cop, Elem, Tensor2, Uq};
use crate::error::{Error, Result};
use crate::groupalg::{form_to_twist, normalize_group_twist, reduce_form, FormMatrix};
use crate::rootdata::{deg_le, QDegree, RootDatum};
use crate::scalars::CycScalar;
use crate::tensor_hopf::{b_shift, degree_of2, exp_nilpotent, gauge, gauge_with_inverse};

/// One recorded step on the B side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeMove {
    /// gauge by the unit u (its inverse stored alongside)
    Small { unit: Elem, inverse: Elem },
    /// gauge by the unit of a dp word
    Dp(DpWord),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaugeLog {
    /// degree-zero unit applied first (None when trivial)
    pub degree_zero: Option<Elem>,
    pub moves: Vec<GaugeMove>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistNormalForm {
    pub alt_form: FormMatrix,
    /// coordinates per positive root w.r.t. the classes of the dp-word leading terms
    pub c: Vec<CycScalar>,
    pub log: GaugeLog,
    /// Q-degrees where a nonexact class was met
    pub obstructions: Vec<QDegree>,
}

/// A twist given densely, or as B_M·J′ with J′ a twist for u_q^B whose
/// degree-zero part is 1⊗1.
#[derive(Clone, Debug)]
pub enum TwistInput {
    Dense(Tensor2),
    Factored { form: FormMatrix, jp: Tensor2 },
}

fn is_zero_deg(d: &[i64]) -> bool {
    d.iter().all(|&x| x == 0)
}

/// Degree-zero part of a tensor.
fn degree_zero_part(uq: &Uq, j: &Tensor2) -> Tensor2 {
    j.iter().filter(|(k, _)| uq.e_part(k.0) == 0 && uq.e_part(k.1) == 0).map(|(k, c)| (*k, c.clone())).collect()
}

/// Reduction state for one datum: dp derivations and cached slice solvers.
pub struct Reducer<'a> {
    pub uq: &'a Uq,
    pub ctx: &'a DpContext,
    solvers: FxHashMap<(FormMatrix, QDegree), BoundingSolver>,
    leading: FxHashMap<(FormMatrix, usize), Tensor2>,
}

impl<'a> Reducer<'a> {
    pub fn new(uq: &'a Uq, ctx: &'a DpContext) -> Self {
        Reducer { uq, ctx, solvers: FxHashMap::default(), leading: FxHashMap::default() }
    }

    fn form_opt(m: &FormMatrix) -> Option<&[Vec<i64>]> {
        if m.iter().all(|r| r.iter().all(|&x| x == 0)) {
            None
        } else {
            Some(m.as_slice())
        }
    }

    /// Leading term τ_μ of dp_word_for_root(μ, 1) on the B side.
    pub fn tau(&mut self, m: &FormMatrix, r: usize) -> Result<Tensor2> {
        if let Some(t) = self.leading.get(&(m.clone(), r)) {
            return Ok(t.clone());
        }
        let w = dp_word_for_root(self.uq, r, &self.uq.f.one());
        let t = self.ctx.leading_term(self.uq, &w, Self::form_opt(m))?;
        self.leading.insert((m.clone(), r), t.clone());
        Ok(t)
    }

    fn solver(&mut self, m: &FormMatrix, gamma: &[i64]) -> Result<&BoundingSolver> {
        let key = (m.clone(), gamma.to_vec());
        if !self.solvers.contains_key(&key) {
            let extra = match in_l_roots(&self.uq.rd, gamma) {
                Some(r) => Some(self.tau(m, r)?),
                None => None,
            };
            let s = BoundingSolver::new(self.uq, Self::form_opt(m), gamma, extra.as_ref())?;
            if !s.injective() {
                return Err(Error::TheoremViolation(format!("H¹ ≠ 0 at degree {:?}", gamma)));
            }
            self.solvers.insert(key.clone(), s);
        }
        Ok(&self.solvers[&key])
    }

    /// Degree-zero normalization: returns (M, v0, J′) with J′ = B_M^{-1}·gauge(v0, J).
    fn normalize_zero(&self, input: &TwistInput) -> Result<(FormMatrix, Option<Elem>, Tensor2)> {
        let uq = self.uq;
        match input {
            TwistInput::Factored { form, jp } => {
                let z = degree_zero_part(uq, jp);
                if z != uq.tensor_one() {
                    return Err(Error::Domain("factored input must have degree-zero part 1⊗1".into()));
                }
                let b = form_to_twist(uq, form);
                let (v0, n) = normalize_group_twist(uq, &b)?;
                if n != reduce_form(form, uq.l) || v0 != uq.one_elem() {
                    return Err(Error::Engine("form twist does not normalize to itself".into()));
                }
                Ok((n, None, jp.clone()))
            }
            TwistInput::Dense(j) => {
                let j0 = degree_zero_part(uq, j);
                let (v0, n) = normalize_group_twist(uq, &j0)?;
                let trivial = v0 == uq.one_elem();
                let jg = if trivial { j.clone() } else { gauge(uq, &v0, j, Cop::Plain)? };
                let jp = b_shift(uq, &n, &jg, false);
                if degree_zero_part(uq, &jp) != uq.tensor_one() {
                    return Err(Error::Engine("degree-zero normalization left a nontrivial part".into()));
                }
                Ok((n, if trivial { None } else { Some(v0) }, jp))
            }
        }
    }

    /// Reduce a twist to its normal form.
    pub fn reduce(&mut self, input: &TwistInput) -> Result<TwistNormalForm> {
        let uq = self.uq;
        let (m, v0, mut jp) = self.normalize_zero(input)?;
        let form = Self::form_opt(&m).map(|f| f.to_vec());
        let cop = match &form {
            Some(f) => Cop::Twisted(f),
            None => Cop::Plain,
        };
        let mut c = vec![uq.f.zero(); uq.rd.num_roots()];
        let mut moves = Vec::new();
        let mut obstructions = Vec::new();
        let one = uq.tensor_one();
        let bound = 4 * uq.top_height() + 4;
        for _ in 0..bound {
            if jp == one {
                return Ok(TwistNormalForm { alt_form: m, c, log: GaugeLog { degree_zero: v0, moves }, obstructions });
            }
            let gamma = minimal_degree(uq, &jp).expect("non-identity twist has a positive degree");
            let jg: Tensor2 = jp.iter().filter(|(k, _)| degree_of2(uq, k) == gamma).map(|(k, v)| (*k, v.clone())).collect();
            let d2 = crate::cohomology::cobar_d2(uq, form.as_deref(), &jg)?;
            if !d2.is_empty() {
                return Err(Error::NotACocycle(format!("minimal term at {:?}", gamma)));
            }
            let (coef, v) = self
                .solver(&m, &gamma)?
                .solve(&jg)
                .ok_or_else(|| Error::TheoremViolation(format!("nonexact class at degree {:?} outside lΦ+", gamma)))?;
            if !v.is_empty() {
                let u = exp_nilpotent(uq, &v)?;
                let neg: Elem = v.iter().map(|(k, x)| (*k, x.neg_ref())).collect();
                let ui = exp_nilpotent(uq, &neg)?;
                jp = gauge_with_inverse(uq, &u, &ui, &jp, cop);
                moves.push(GaugeMove::Small { unit: u, inverse: ui });
            }
            if !coef.is_zero() {
                let r = in_l_roots(&uq.rd, &gamma).expect("extra column only at lΦ+");
                obstructions.push(gamma.clone());
                let w = dp_word_for_root(uq, r, &coef.neg_ref());
                jp = self.ctx.apply_word(uq, &w, &jp, form.as_deref());
                c[r] = &c[r] + &coef;
                moves.push(GaugeMove::Dp(w));
            }
        }
        Err(Error::Engine("reduction did not terminate within the degree bound".into()))
    }

    /// Rebuild the input from the normal form by applying the log backwards.
    pub fn replay(&self, nf: &TwistNormalForm, dense: bool) -> Result<TwistInput> {
        let uq = self.uq;
        let form = Self::form_opt(&nf.alt_form).map(|f| f.to_vec());
        let cop = match &form {
            Some(f) => Cop::Twisted(f),
            None => Cop::Plain,
        };
        let mut jp = uq.tensor_one();
        for mv in nf.log.moves.iter().rev() {
            jp = match mv {
                GaugeMove::Small { unit, inverse } => gauge_with_inverse(uq, inverse, unit, &jp, cop),
                GaugeMove::Dp(w) => self.ctx.apply_word(uq, &w.inverse(), &jp, form.as_deref()),
            };
        }
        if !dense && nf.log.degree_zero.is_none() {
            return Ok(TwistInput::Factored { form: nf.alt_form.clone(), jp });
        }
        let mut j = b_shift(uq, &nf.alt_form, &jp, true);
        if let Some(v0) = &nf.log.degree_zero {
            let vi = crate::tensor_hopf::group_inverse(uq, v0)?;
            j = gauge_with_inverse(uq, &vi, v0, &j, Cop::Plain);
        }
        Ok(TwistInput::Dense(j))
    }
}

/// Minimal positive degree present (lowest height, then lexicographic);
/// minimal in the partial order as well.
pub fn minimal_degree(uq: &Uq, j: &Tensor2) -> Option<QDegree> {
    let mut degs: Vec<QDegree> = j.keys().map(|k| degree_of2(uq, k)).filter(|d| !is_zero_deg(d)).collect();
    degs.sort_by_key(|d| (d.iter().sum::<i64>(), d.clone()));
    degs.into_iter().next()
}

/// (alt_form, c) of a twist.
pub fn classify_orbit(red: &mut Reducer, input: &TwistInput) -> Result<(FormMatrix, Vec<CycScalar>)> {
    let nf = red.reduce(input)?;
    Ok((nf.alt_form, nf.c))
}

// ---------- randomized inputs ----------

/// A random coefficient: ±1, ±2 or a power of ζ.
pub fn random_coeff(uq: &Uq, rng: &mut ChaCha8Rng) -> CycScalar {
    match rng.gen_range(0..3) {
        0 => uq.f.from_int(if rng.gen_bool(0.5) { 1 } else { -1 }),
        1 => uq.f.from_int(if rng.gen_bool(0.5) { 2 } else { -2 }),
        _ => uq.f.zeta_pow(rng.gen_range(1..uq.l as i64)),
    }
}

/// exp(x) for x a sum of `terms` random monomials K^kE^m of height
/// 1..=max_height.
pub fn random_small_unit(uq: &Uq, rng: &mut ChaCha8Rng, terms: usize, max_height: i64) -> Result<Elem> {
    let pool: Vec<u64> = uq.basis().into_iter().filter(|&m| (1..=max_height).contains(&uq.height(m))).collect();
    let mut x: Elem = FxHashMap::default();
    for _ in 0..terms {
        let m = pool[rng.gen_range(0..pool.len())];
        acc_add(&mut x, m, random_coeff(uq, rng));
    }
    exp_nilpotent(uq, &x)
}

/// Random dp words (count in 1..=max_words) over the given roots.
pub fn random_dp_words(uq: &Uq, rng: &mut ChaCha8Rng, roots: &[usize], max_words: usize) -> Vec<DpWord> {
    let n = rng.gen_range(1..=max_words);
    (0..n).map(|_| dp_word_for_root(uq, roots[rng.gen_range(0..roots.len())], &random_coeff(uq, rng))).collect()
}

/// (random small gauge) ∘ (dp words) applied to form_to_twist(M), in
/// factored form.
pub fn random_twist(
    uq: &Uq,
    ctx: &DpContext,
    m: &FormMatrix,
    roots: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<TwistInput> {
    let form: Option<&[Vec<i64>]> = if m.iter().all(|r| r.iter().all(|&x| x == 0)) { None } else { Some(m) };
    let cop = match form {
        Some(f) => Cop::Twisted(f),
        None => Cop::Plain,
    };
    let mut jp = uq.tensor_one();
    for w in random_dp_words(uq, rng, roots, 3) {
        jp = ctx.apply_word(uq, &w, &jp, form);
    }
    let u = random_small_unit(uq, rng, 1, 2)?;
    jp = gauge(uq, &u, &jp, cop)?;
    Ok(TwistInput::Factored { form: m.clone(), jp })
}

// ---------- invariants ----------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KappaVerdict {
    Distinct,
    Compatible,
    Equal,
}

fn pullback(rd: &RootDatum, m: &[Vec<i64>]) -> FormMatrix {
    let (k, _) = rd.killing_map();
    let l = rd.l as i64;
    let r = rd.rank;
    let mut out = vec![vec![0; r]; r];
    for i in 0..r {
        for j in 0..r {
            let mut s = 0;
            for a in 0..r {
                for b in 0..r {
                    s += k[a][i] * m[a][b] * k[b][j];
                }
            }
            out[i][j] = s.rem_euclid(l);
        }
    }
    out
}

/// Compare κᵀMκ with κᵀM′κ mod l.
pub fn kappa_restriction_invariant(rd: &RootDatum, m: &[Vec<i64>], m2: &[Vec<i64>]) -> KappaVerdict {
    let l = rd.l;
    if reduce_form(m, l) == reduce_form(m2, l) {
        return KappaVerdict::Equal;
    }
    if pullback(rd, m) != pullback(rd, m2) {
        KappaVerdict::Distinct
    } else {
        KappaVerdict::Compatible
    }
}

/// Some pair of distinct alternating forms with equal κ-pullback, searched
/// over differences of the zero form.
pub fn find_compatible_pair(rd: &RootDatum) -> Option<(FormMatrix, FormMatrix)> {
    let zero = vec![vec![0; rd.rank]; rd.rank];
    crate::groupalg::enumerate_alternating(rd.rank, rd.l)
        .into_iter()
        .find(|m| kappa_restriction_invariant(rd, &zero, m) == KappaVerdict::Compatible)
        .map(|m| (zero, m))
}

/// For each alternating form, reduce `samples` randomized twists built from
/// it and check the recovered form; forms must be pairwise distinguished.
pub fn alt_injectivity_check(
    red: &mut Reducer,
    forms: &[FormMatrix],
    roots: &[usize],
    samples: usize,
    seed: u64,
) -> Result<bool> {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen: Vec<FormMatrix> = Vec::new();
    for m in forms {
        for _ in 0..samples {
            let t = random_twist(red.uq, red.ctx, m, roots, &mut rng)?;
            let (a, _) = classify_orbit(red, &t)?;
            if &a != m {
                return Ok(false);
            }
        }
        if seen.contains(m) {
            return Ok(false);
        }
        seen.push(m.clone());
    }
    Ok(true)
}

pub fn degree_within(gamma: &[i64], bound: &[i64]) -> bool {
    deg_le(gamma, bound)
}
