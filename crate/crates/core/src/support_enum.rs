//! Minmax by support enumeration.
//!
//! The punishing players' optimal profile uses at most k actions each (k =
//! number of player-1 actions), so the minmax value is the minimum over all
//! support pairs of the restricted subgame value. Supports are enumerated at
//! size exactly min(k, n_j) — smaller supports are reached by zero mass — in
//! lexicographic order, and ties keep the lexicographically first pair.
//!
//! Two subgame engines back the scan. On supports of at most two actions per
//! punisher (and k <= 3) the value is found exactly: the best-response surface
//! is a maximum of bilinear functions of (p, q), and its minimum over the unit
//! square lies at a corner, an edge breakpoint, a stationary point of a
//! two-surface tie curve, or a crossing of that curve with a third surface.
//! All of those are roots of polynomials of degree <= 2, so the value lives in
//! Q or a quadratic extension Q(sqrt(d)) and every comparison is exact. Larger
//! subgames fall back to a certified numeric branch-and-bound over the sigma_2
//! simplex: alternating best-response descent supplies upper bounds, and an
//! exact LP relaxation over each cell's vertices supplies lower bounds that
//! converge as cells shrink.

use crate::error::{Error, Result};
use crate::game::{BullyProfile, MixedStrategy, PayoffTensor};
use crate::poly::{Poly, Root};
use crate::rational::{rat, Rational};
use crate::value::{GameValue, QuadExt, ValueCmp};
use crate::zerosum::zs_value;
use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Largest k (player-1 action count) the enumeration accepts; beyond this the
/// subgame count and simplex dimension make the scan pointless.
pub const SUPPORT_KCAP: usize = 6;

/// Cap on the number of (support_2, support_3) pairs one call may visit.
pub const SUPPORT_PAIR_BUDGET: u128 = 20_000;

/// Tuning for the support scan and its numeric fallback.
#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Solve two-action subgames symbolically when possible.
    pub exact: bool,
    /// Bracket width demanded from the numeric engine.
    pub tol: Rational,
    /// Seed for the numeric multi-start descent.
    pub seed: u64,
    /// LP evaluations allowed per numeric subgame.
    pub lp_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            exact: true,
            tol: rat(1, 1_000_000_000),
            seed: 0,
            lp_budget: 20_000,
        }
    }
}

/// Mixed strategies with coordinates in Q(sqrt(d)), reported when the exact
/// engine lands on an irrational tie point. `strategies[player][action]` is
/// (x, y) meaning x + y*sqrt(d).
#[derive(Clone, Debug)]
pub struct SymbolicProfile {
    pub d: BigUint,
    pub strategies: Vec<Vec<(Rational, Rational)>>,
}

impl SymbolicProfile {
    /// One punisher's strategy as field elements.
    pub fn strategy_quad(&self, player: usize) -> Vec<QuadExt> {
        self.strategies[player]
            .iter()
            .map(|(x, y)| QuadExt::new(x.clone(), y.clone(), self.d.clone()))
            .collect()
    }
}

/// Value and witness for one subgame, or — after the full scan — for the
/// whole game with the witness lifted to full dimension.
#[derive(Clone, Debug)]
pub struct SubgameSolution {
    pub value: GameValue,
    /// Rational witness profile. Exact when the value is exact at a rational
    /// point; a high-precision rounding of the symbolic profile otherwise.
    pub profile: BullyProfile,
    /// Present when the witness has irrational coordinates.
    pub symbolic: Option<SymbolicProfile>,
    /// Set when the numeric engine hit its budget before reaching `tol`, or
    /// the scan could not order two overlapping brackets.
    pub unconverged: bool,
    /// Winning supports, filled by the top-level scan.
    pub supports: Option<(Vec<usize>, Vec<usize>)>,
}

/// Answer of the threshold query "is the minmax value <= alpha?".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Yes,
    No,
    /// The available brackets straddle alpha; the enclosure is reported.
    Unknown { lo: Rational, hi: Rational },
}

/// All size-k subsets of {0..n-1} in lexicographic order.
pub fn enumerate_supports(n: usize, k: usize) -> Vec<Vec<usize>> {
    assert!(k >= 1 && k <= n, "support size must satisfy 1 <= k <= n");
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

pub(crate) fn binom(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i as u128 + 1);
    }
    r
}

fn in01(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

fn clamp01(x: Rational) -> Rational {
    if x.is_negative() {
        Rational::zero()
    } else if x > Rational::one() {
        Rational::one()
    } else {
        x
    }
}

// ---------------------------------------------------------------------------
// Exact engine for two-action supports
// ---------------------------------------------------------------------------

/// One player-1 row's expected payoff a + b p + (c + d p) q, where p and q are
/// the probabilities of the punishers' FIRST actions.
struct Bilinear {
    a: Rational,
    b: Rational,
    c: Rational,
    d: Rational,
}

impl Bilinear {
    fn from_tensor(sub: &PayoffTensor, i: usize) -> Self {
        let u = |j: usize, k: usize| sub.get(&[i, j, k]).clone();
        let a = u(1, 1);
        let b = &u(0, 1) - &a;
        let c = &u(1, 0) - &a;
        let d = &(&u(0, 0) - &u(0, 1)) - &(&u(1, 0) - &u(1, 1));
        Bilinear { a, b, c, d }
    }

    fn eval_rat(&self, p: &Rational, q: &Rational) -> Rational {
        &(&self.a + &(&self.b * p)) + &(&(&self.c + &(&self.d * p)) * q)
    }

    fn eval_quad(&self, p: &QuadExt, q: &QuadExt, d: &BigUint) -> QuadExt {
        let ap = p.scale(&self.b).add_rational(&self.a);
        let cp = p.scale(&self.d).add_rational(&self.c);
        let _ = d;
        ap.add(&cp.mul(q))
    }

    fn diff(&self, o: &Self) -> Bilinear {
        Bilinear {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
            c: &self.c - &o.c,
            d: &self.d - &o.d,
        }
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Restriction to the vertical line p = p0, as an affine function of q.
    fn line_at_p(&self, p0: &Rational) -> (Rational, Rational) {
        (&self.a + &(&self.b * p0), &self.c + &(&self.d * p0))
    }
}

#[derive(Clone, Debug)]
enum Coord {
    Rat(Rational),
    Quad(QuadExt),
}

#[derive(Clone, Debug)]
enum CandValue {
    R(Rational),
    Q(QuadExt),
}

impl CandValue {
    fn to_game_value(&self) -> GameValue {
        match self {
            CandValue::R(x) => GameValue::exact(x.clone()),
            CandValue::Q(x) => GameValue::from_quad_ext(x),
        }
    }
}

/// Total order on candidate values; all forms here are exact, so the
/// comparison always decides.
fn cmp_cand(x: &CandValue, y: &CandValue) -> Ordering {
    match (x, y) {
        (CandValue::R(a), CandValue::R(b)) => a.cmp(b),
        (CandValue::Q(a), CandValue::R(b)) => a.cmp_rational(b),
        (CandValue::R(a), CandValue::Q(b)) => b.cmp_rational(a).reverse(),
        (CandValue::Q(a), CandValue::Q(b)) => {
            if a.d == b.d {
                a.cmp_ext(b)
            } else {
                match GameValue::from_quad_ext(a).compare(&GameValue::from_quad_ext(b)) {
                    ValueCmp::Decided(o) => o,
                    ValueCmp::Ambiguous => unreachable!("exact forms compare decisively"),
                }
            }
        }
    }
}

/// In-interval crossing points of the pairwise-equal affine functions
/// q -> a + b q, in pair order; used for edge minima of max-of-affines.
fn line_crossings(lines: &[(Rational, Rational)]) -> Vec<Rational> {
    let mut out = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let db = &lines[i].1 - &lines[j].1;
            if db.is_zero() {
                continue;
            }
            let t = &(&lines[j].0 - &lines[i].0) / &db;
            if in01(&t) {
                out.push(t);
            }
        }
    }
    out
}

/// Exact minimum over t in [0,1] of max_l (a_l + b_l t); returns (value, t).
fn min_max_lines(lines: &[(Rational, Rational)]) -> (Rational, Rational) {
    let eval = |t: &Rational| -> Rational {
        lines
            .iter()
            .map(|(a, b)| a + &(b * t))
            .max()
            .expect("at least one line")
    };
    let mut cands = vec![Rational::zero(), Rational::one()];
    cands.extend(line_crossings(lines));
    let mut best_t = cands[0].clone();
    let mut best_v = eval(&best_t);
    for t in &cands[1..] {
        let v = eval(t);
        if v < best_v {
            best_v = v;
            best_t = t.clone();
        }
    }
    (best_v, best_t)
}

fn root_to_coord(r: &Root) -> Coord {
    match r {
        Root::Exact(x) => Coord::Rat(x.clone()),
        Root::Quad { a, b, d } => Coord::Quad(QuadExt::new(a.clone(), b.clone(), d.clone())),
        Root::Isolated { .. } => {
            unreachable!("tie-curve candidates solve polynomials of degree <= 2")
        }
    }
}

fn coord_in01(c: &Coord) -> bool {
    match c {
        Coord::Rat(x) => in01(x),
        Coord::Quad(x) => x.in_unit_interval(),
    }
}

/// max_i f_i at a candidate point, exactly.
fn candidate_value(surfaces: &[Bilinear], p: &Coord, q: &Coord) -> CandValue {
    match (p, q) {
        (Coord::Rat(p), Coord::Rat(q)) => {
            let vals: Vec<Rational> = surfaces.iter().map(|s| s.eval_rat(p, q)).collect();
            CandValue::R(vals.into_iter().max().expect("at least one surface"))
        }
        _ => {
            let d = match (p, q) {
                (Coord::Quad(x), _) => x.d.clone(),
                (_, Coord::Quad(y)) => y.d.clone(),
                _ => unreachable!(),
            };
            let lift = |c: &Coord| match c {
                Coord::Rat(x) => QuadExt::from_rational(x.clone(), d.clone()),
                Coord::Quad(x) => {
                    debug_assert!(x.d == d, "candidate coordinates share one field");
                    x.clone()
                }
            };
            let (pq, qq) = (lift(p), lift(q));
            let mut best: Option<QuadExt> = None;
            for s in surfaces {
                let v = s.eval_quad(&pq, &qq, &d);
                if best
                    .as_ref()
                    .is_none_or(|b| v.cmp_ext(b) == Ordering::Greater)
                {
                    best = Some(v);
                }
            }
            CandValue::Q(best.expect("at least one surface"))
        }
    }
}

/// Strategy pair (t, 1-t) from a coordinate, plus its symbolic row when the
/// coordinate is irrational.
fn coord_to_strategy(c: &Coord) -> (MixedStrategy, Vec<(Rational, Rational)>) {
    match c {
        Coord::Rat(t) => {
            let probs = vec![t.clone(), &Rational::one() - t];
            let sym = vec![
                (t.clone(), Rational::zero()),
                (probs[1].clone(), Rational::zero()),
            ];
            (MixedStrategy::new(probs).expect("valid distribution"), sym)
        }
        Coord::Quad(x) => {
            let (lo, hi) = x.bounds(96);
            let approx = clamp01((lo + hi) / rat(2, 1));
            let probs = vec![approx.clone(), &Rational::one() - &approx];
            let sym = vec![
                (x.a.clone(), x.b.clone()),
                (&Rational::one() - &x.a, -x.b.clone()),
            ];
            (MixedStrategy::new(probs).expect("valid distribution"), sym)
        }
    }
}

/// Expected payoffs of every player-1 action under a symbolic profile,
/// computed in Q(sqrt(d)). Used to certify tie equations of exact solutions.
pub fn expected_payoffs_quad(sub: &PayoffTensor, profile: &SymbolicProfile) -> Vec<QuadExt> {
    let dims = sub.dims();
    assert_eq!(dims.len(), 3, "three-player tensors only");
    let s2 = profile.strategy_quad(0);
    let s3 = profile.strategy_quad(1);
    assert_eq!(s2.len(), dims[1]);
    assert_eq!(s3.len(), dims[2]);
    let zero = QuadExt::from_rational(Rational::zero(), profile.d.clone());
    (0..dims[0])
        .map(|i| {
            let mut acc = zero.clone();
            for (j, pj) in s2.iter().enumerate() {
                for (k, qk) in s3.iter().enumerate() {
                    let term = pj.mul(qk).scale(sub.get(&[i, j, k]));
                    acc = acc.add(&term);
                }
            }
            acc
        })
        .collect()
}

/// Exact minmax of a subgame whose punishers have at most two actions each
/// (k <= 3 rows). The value is rational or quadratic-irrational and the
/// returned profile attains it; irrational witnesses carry their symbolic
/// coordinates.
pub fn solve_subgame_exact2(sub: &PayoffTensor) -> Result<SubgameSolution> {
    let dims = sub.dims().to_vec();
    if dims.len() != 3 {
        return Err(Error::validation("exact engine expects three players"));
    }
    let (k, s2, s3) = (dims[0], dims[1], dims[2]);
    if k > 3 {
        return Err(Error::validation(
            "exact two-action engine handles at most 3 player-1 actions",
        ));
    }
    if s2 > 2 || s3 > 2 {
        return Err(Error::validation(
            "exact engine requires at most two actions per punisher",
        ));
    }

    // Degenerate one-action sides reduce to a point or a 1-D line problem.
    if s2 == 1 && s3 == 1 {
        let value = (0..k).map(|i| sub.get(&[i, 0, 0]).clone()).max().unwrap();
        let profile = BullyProfile::pure(&[0, 0], &[1, 1]);
        assert_eq!(sub.best_response_value(&profile)?, value);
        return Ok(SubgameSolution {
            value: GameValue::exact(value),
            profile,
            symbolic: None,
            unconverged: false,
            supports: None,
        });
    }
    if s2 == 1 || s3 == 1 {
        // Affine in the single free probability t (of the first action).
        let lines: Vec<(Rational, Rational)> = (0..k)
            .map(|i| {
                let (u0, u1) = if s2 == 1 {
                    (sub.get(&[i, 0, 0]).clone(), sub.get(&[i, 0, 1]).clone())
                } else {
                    (sub.get(&[i, 0, 0]).clone(), sub.get(&[i, 1, 0]).clone())
                };
                (u1.clone(), &u0 - &u1)
            })
            .collect();
        let (value, t) = min_max_lines(&lines);
        let mix = MixedStrategy::new(vec![t.clone(), &Rational::one() - &t]).unwrap();
        let profile = if s2 == 1 {
            BullyProfile::new(vec![MixedStrategy::point_mass(0, 1), mix]).unwrap()
        } else {
            BullyProfile::new(vec![mix, MixedStrategy::point_mass(0, 1)]).unwrap()
        };
        assert_eq!(sub.best_response_value(&profile)?, value);
        return Ok(SubgameSolution {
            value: GameValue::exact(value),
            profile,
            symbolic: None,
            unconverged: false,
            supports: None,
        });
    }

    let surfaces: Vec<Bilinear> = (0..k).map(|i| Bilinear::from_tensor(sub, i)).collect();
    let zero = Rational::zero();
    let one = Rational::one();

    let mut cands: Vec<(Coord, Coord)> = Vec::new();
    // Corners.
    for p in [&zero, &one] {
        for q in [&zero, &one] {
            cands.push((Coord::Rat(p.clone()), Coord::Rat(q.clone())));
        }
    }
    // Edge breakpoints: each edge restricts every surface to an affine
    // function; the convex max attains its minimum at an endpoint (a corner,
    // above) or a pairwise crossing.
    let edge_lines = |fixed_p: Option<&Rational>, fixed_q: Option<&Rational>| -> Vec<(Rational, Rational)> {
        surfaces
            .iter()
            .map(|s| match (fixed_p, fixed_q) {
                (Some(p0), None) => s.line_at_p(p0),
                (None, Some(q0)) => (&s.a + &(&s.c * q0), &s.b + &(&s.d * q0)),
                _ => unreachable!(),
            })
            .collect()
    };
    for p0 in [&zero, &one] {
        for t in line_crossings(&edge_lines(Some(p0), None)) {
            cands.push((Coord::Rat(p0.clone()), Coord::Rat(t)));
        }
    }
    for q0 in [&zero, &one] {
        for t in line_crossings(&edge_lines(None, Some(q0))) {
            cands.push((Coord::Rat(t), Coord::Rat(q0.clone())));
        }
    }
    // Two-surface tie curves. For g = f_i - f_j = A + Bp + Cq + Dpq the tie
    // set is a (possibly degenerate) hyperbola. A vertical line component
    // p = -C/D (present when it also kills A + Bp) is scanned as a 1-D
    // problem; the rest is the graph q(p) = -(A+Bp)/(C+Dp), along which the
    // tied value is N_l(p)/(C+Dp). Candidates are its stationary points and
    // its crossings with third surfaces — all roots of quadratics. Triple
    // ties are crossings, so they need no separate pass.
    for i in 0..k {
        for j in i + 1..k {
            let g = surfaces[i].diff(&surfaces[j]);
            if g.is_zero() {
                continue;
            }
            let mut verticals: Vec<Rational> = Vec::new();
            let mut smooth = true;
            if !g.d.is_zero() {
                let p0 = -(&g.c / &g.d);
                if (&g.a + &(&g.b * &p0)).is_zero() && in01(&p0) {
                    verticals.push(p0);
                }
            } else if g.c.is_zero() {
                // g has no q term: the tie set is the vertical line p = -A/B.
                smooth = false;
                if !g.b.is_zero() {
                    let p0 = -(&g.a / &g.b);
                    if in01(&p0) {
                        verticals.push(p0);
                    }
                }
            }
            for p0 in &verticals {
                let lines: Vec<(Rational, Rational)> =
                    surfaces.iter().map(|s| s.line_at_p(p0)).collect();
                cands.push((Coord::Rat(p0.clone()), Coord::Rat(zero.clone())));
                cands.push((Coord::Rat(p0.clone()), Coord::Rat(one.clone())));
                for t in line_crossings(&lines) {
                    cands.push((Coord::Rat(p0.clone()), Coord::Rat(t)));
                }
            }
            if !smooth {
                continue;
            }
            let num = Poly::new(vec![g.a.clone(), g.b.clone()]);
            let den = Poly::new(vec![g.c.clone(), g.d.clone()]);
            let n_of = |l: usize| -> Poly {
                let aff = Poly::new(vec![surfaces[l].a.clone(), surfaces[l].b.clone()]);
                let qc = Poly::new(vec![surfaces[l].c.clone(), surfaces[l].d.clone()]);
                aff.mul(&den).sub(&num.mul(&qc))
            };
            let n_i = n_of(i);
            let stationary = n_i.derivative().mul(&den).sub(&n_i.scale(&g.d));
            let mut roots: Vec<Root> = Vec::new();
            if !stationary.is_zero() {
                roots.extend(stationary.real_roots());
            }
            for m in 0..k {
                if m == i || m == j {
                    continue;
                }
                let cross = n_of(m).sub(&n_i);
                if !cross.is_zero() {
                    roots.extend(cross.real_roots());
                }
            }
            for r in &roots {
                let pc = root_to_coord(r);
                if !coord_in01(&pc) {
                    continue;
                }
                let qc = match &pc {
                    Coord::Rat(p) => {
                        let dv = den.eval(p);
                        if dv.is_zero() {
                            continue;
                        }
                        Coord::Rat(-(&num.eval(p) / &dv))
                    }
                    Coord::Quad(p) => {
                        let dv = den.eval_quad(p);
                        if dv.is_zero() {
                            continue;
                        }
                        Coord::Quad(num.eval_quad(p).div(&dv).neg())
                    }
                };
                if coord_in01(&qc) {
                    cands.push((pc, qc));
                }
            }
        }
    }

    let mut best: Option<(CandValue, Coord, Coord)> = None;
    for (p, q) in cands {
        let v = candidate_value(&surfaces, &p, &q);
        if best
            .as_ref()
            .is_none_or(|(bv, _, _)| cmp_cand(&v, bv) == Ordering::Less)
        {
            best = Some((v, p, q));
        }
    }
    let (value, wp, wq) = best.expect("corner candidates always exist");

    let (m2, sym2) = coord_to_strategy(&wp);
    let (m3, sym3) = coord_to_strategy(&wq);
    let profile = BullyProfile::new(vec![m2, m3]).unwrap();
    let symbolic = match (&wp, &wq) {
        (Coord::Rat(_), Coord::Rat(_)) => None,
        _ => {
            let d = match (&wp, &wq) {
                (Coord::Quad(x), _) => x.d.clone(),
                (_, Coord::Quad(y)) => y.d.clone(),
                _ => unreachable!(),
            };
            Some(SymbolicProfile {
                d,
                strategies: vec![sym2, sym3],
            })
        }
    };

    // Certify the winner against the tensor through an independent path.
    match (&value, &symbolic) {
        (CandValue::R(v), None) => {
            assert_eq!(
                &sub.best_response_value(&profile)?,
                v,
                "exact witness must attain the value"
            );
        }
        (v, Some(sym)) => {
            let vq = match v {
                CandValue::R(x) => QuadExt::from_rational(x.clone(), sym.d.clone()),
                CandValue::Q(x) => x.clone(),
            };
            let evs = expected_payoffs_quad(sub, sym);
            let max = evs
                .into_iter()
                .max_by(|x, y| x.cmp_ext(y))
                .expect("at least one row");
            assert!(
                max.cmp_ext(&vq) == Ordering::Equal,
                "symbolic witness must attain the value"
            );
        }
        (CandValue::Q(_), None) => unreachable!("irrational value implies irrational witness"),
    }

    Ok(SubgameSolution {
        value: value.to_game_value(),
        profile,
        symbolic,
        unconverged: false,
        supports: None,
    })
}

// ---------------------------------------------------------------------------
// Numeric engine
// ---------------------------------------------------------------------------

pub(crate) fn matrix_rows(t: &PayoffTensor) -> Vec<Vec<Rational>> {
    let cols = t.dims()[1];
    t.data().chunks(cols).map(|r| r.to_vec()).collect()
}

fn dyadic_floor(x: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = x * &Rational::from_integer(scale.clone());
    Rational::new(scaled.floor().to_integer(), scale)
}

/// Snaps a distribution onto the 2^-bits grid without leaving the simplex:
/// floors every coordinate and hands the deficit to the largest one.
fn round_strategy(probs: &[Rational], bits: u32) -> MixedStrategy {
    let mut rounded: Vec<Rational> = probs.iter().map(|p| dyadic_floor(p, bits)).collect();
    let sum: Rational = rounded.iter().sum();
    let deficit = &Rational::one() - &sum;
    if !deficit.is_zero() {
        let mut arg = 0;
        for (idx, p) in probs.iter().enumerate() {
            if p > &probs[arg] {
                arg = idx;
            }
        }
        rounded[arg] = &rounded[arg] + &deficit;
    }
    MixedStrategy::new(rounded).expect("rounding preserves the simplex")
}

/// Local search for low best-response values: alternately re-optimize each
/// punisher by an exact LP against the other, from uniform, pure, two-point
/// and seeded random starts. Returns the best (value, profile) found; the
/// value is exact for the returned profile, hence a true upper bound on the
/// minmax.
pub fn alternating_descent(
    game: &PayoffTensor,
    seed: u64,
    random_starts: usize,
) -> Result<(Rational, BullyProfile)> {
    if game.num_players() != 3 {
        return Err(Error::validation("descent expects three players"));
    }
    let n3 = game.dims()[2];
    let mut starts = vec![MixedStrategy::uniform(n3)];
    for a in 0..n3 {
        starts.push(MixedStrategy::point_mass(a, n3));
    }
    // Two-point starts catch minima supported on small coordinated sets
    // (e.g. coordination games whose good threats sit on action pairs) that
    // the uniform and pure starts descend past.
    if n3 >= 2 && binom(n3, 2) <= 256 {
        for pair in enumerate_supports(n3, 2) {
            starts.push(MixedStrategy::uniform_on(&pair, n3));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..random_starts {
        let raw: Vec<u64> = (0..n3).map(|_| rng.gen_range(1..=1u64 << 16)).collect();
        let total: u64 = raw.iter().sum();
        let probs = raw
            .iter()
            .map(|&x| Rational::new(BigInt::from(x), BigInt::from(total)))
            .collect();
        starts.push(MixedStrategy::new(probs)?);
    }

    let mut best: Option<(Rational, BullyProfile)> = None;
    for start in starts {
        let mut sigma3 = start;
        let mut prev: Option<Rational> = None;
        for _ in 0..40 {
            let m2 = game.contract_axis(2, &sigma3.probs)?;
            let sigma2 = round_strategy(&zs_value(&matrix_rows(&m2))?.col_strategy.probs, 60);
            let m3 = game.contract_axis(1, &sigma2.probs)?;
            sigma3 = round_strategy(&zs_value(&matrix_rows(&m3))?.col_strategy.probs, 60);
            let profile = BullyProfile::new(vec![sigma2, sigma3.clone()])?;
            let v = game.best_response_value(&profile)?;
            if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                best = Some((v.clone(), profile));
            }
            match &prev {
                Some(pv) if v >= *pv => break,
                _ => prev = Some(v),
            }
        }
    }
    Ok(best.expect("at least one start was evaluated"))
}

/// Branch-and-bound cell: a sub-simplex of the sigma_2 simplex.
struct Cell {
    lb: Rational,
    id: u64,
    verts: Vec<Vec<Rational>>,
}

impl PartialEq for Cell {
    fn eq(&self, o: &Self) -> bool {
        self.id == o.id
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Cell {
    // BinaryHeap pops the maximum; invert so the smallest (lb, id) pops first.
    fn cmp(&self, o: &Self) -> Ordering {
        o.lb.cmp(&self.lb).then_with(|| o.id.cmp(&self.id))
    }
}

/// G(sigma_2) = value of the player-1 vs player-3 game after fixing sigma_2,
/// with the minimizing sigma_3 as witness.
fn bb_eval(sub: &PayoffTensor, sigma2: &[Rational]) -> Result<(Rational, MixedStrategy)> {
    let m = sub.contract_axis(1, sigma2)?;
    let sol = zs_value(&matrix_rows(&m))?;
    Ok((sol.value, sol.col_strategy))
}

/// Certified lower bound for min over the cell: let the column player pick a
/// cell vertex AND a player-3 action. For fixed player-1 mix x the payoff is
/// affine in sigma_2, so its minimum over the cell sits at a vertex; the LP
/// value is therefore <= G everywhere on the cell, and equals it in the limit
/// of shrinking cells.
fn bb_corner_bound(sub: &PayoffTensor, verts: &[Vec<Rational>]) -> Result<Rational> {
    let k = sub.dims()[0];
    let s3 = sub.dims()[2];
    let mut rows: Vec<Vec<Rational>> = vec![Vec::with_capacity(verts.len() * s3); k];
    for v in verts {
        let m = sub.contract_axis(1, v)?;
        for (i, chunk) in m.data().chunks(s3).enumerate() {
            rows[i].extend_from_slice(chunk);
        }
    }
    Ok(zs_value(&rows)?.value)
}

fn longest_edge(verts: &[Vec<Rational>]) -> (usize, usize) {
    let mut best = (0, 1);
    let mut best_d: Option<Rational> = None;
    for a in 0..verts.len() {
        for b in a + 1..verts.len() {
            let d: Rational = verts[a]
                .iter()
                .zip(&verts[b])
                .map(|(x, y)| {
                    let t = x - y;
                    &t * &t
                })
                .sum();
            if best_d.as_ref().is_none_or(|bd| d > *bd) {
                best_d = Some(d);
                best = (a, b);
            }
        }
    }
    best
}

/// Certified numeric minmax of one subgame: bracket of width <= tol unless
/// the LP budget runs out first (then the achieved bracket is returned with
/// `unconverged` set — never an error). The upper endpoint is realized by the
/// returned profile exactly.
pub fn solve_subgame_numeric(
    sub: &PayoffTensor,
    tol: &Rational,
    seed: u64,
    lp_budget: u64,
) -> Result<SubgameSolution> {
    if sub.num_players() != 3 {
        return Err(Error::validation("numeric engine expects three players"));
    }
    if !tol.is_positive() {
        return Err(Error::validation("tolerance must be positive"));
    }
    let s2 = sub.dims()[1];

    let (mut hi, prof0) = alternating_descent(sub, seed, 4)?;
    let mut wit2 = prof0.strategies[0].probs.clone();
    let mut wit3 = prof0.strategies[1].clone();

    let mut evals: u64 = 0;
    let mut heap = BinaryHeap::new();
    let mut next_id: u64 = 0;

    let verts: Vec<Vec<Rational>> = (0..s2)
        .map(|j| {
            let mut e = vec![Rational::zero(); s2];
            e[j] = Rational::one();
            e
        })
        .collect();
    for v in &verts {
        let (gv, s3w) = bb_eval(sub, v)?;
        evals += 1;
        if gv < hi {
            hi = gv;
            wit2 = v.clone();
            wit3 = s3w;
        }
    }
    let lb0 = bb_corner_bound(sub, &verts)?;
    evals += 1;
    heap.push(Cell {
        lb: lb0,
        id: next_id,
        verts,
    });
    next_id += 1;

    let mut unconverged = false;
    loop {
        let lo_now = heap.peek().expect("heap never empties").lb.clone();
        if &hi - &lo_now <= *tol {
            break;
        }
        if evals >= lp_budget {
            unconverged = true;
            break;
        }
        let cell = heap.pop().unwrap();
        let (ia, ib) = longest_edge(&cell.verts);
        let mid: Vec<Rational> = cell.verts[ia]
            .iter()
            .zip(&cell.verts[ib])
            .map(|(x, y)| &(x + y) / &rat(2, 1))
            .collect();
        let (gv, s3w) = bb_eval(sub, &mid)?;
        evals += 1;
        if gv < hi {
            hi = gv;
            wit2 = mid.clone();
            wit3 = s3w;
        }
        for replace in [ia, ib] {
            let mut child = cell.verts.clone();
            child[replace] = mid.clone();
            let lb = bb_corner_bound(sub, &child)?;
            evals += 1;
            heap.push(Cell {
                lb,
                id: next_id,
                verts: child,
            });
            next_id += 1;
        }
    }
    let lo = heap.peek().unwrap().lb.clone();
    assert!(lo <= hi, "certified lower bound cannot exceed an achieved value");

    let profile = BullyProfile::new(vec![MixedStrategy::new(wit2)?, wit3])?;
    assert_eq!(
        sub.best_response_value(&profile)?,
        hi,
        "upper endpoint must be realized by the witness"
    );
    let value = if lo == hi {
        GameValue::exact(hi)
    } else {
        GameValue::bracket(lo, hi)
    };
    Ok(SubgameSolution {
        value,
        profile,
        symbolic: None,
        unconverged,
        supports: None,
    })
}

// ---------------------------------------------------------------------------
// Top-level scan
// ---------------------------------------------------------------------------

fn restrict_bullies(game: &PayoffTensor, s2: &[usize], s3: &[usize]) -> PayoffTensor {
    let k = game.dims()[0];
    let mut data = Vec::with_capacity(k * s2.len() * s3.len());
    for i in 0..k {
        for &j in s2 {
            for &kk in s3 {
                data.push(game.get(&[i, j, kk]).clone());
            }
        }
    }
    PayoffTensor::new(vec![k, s2.len(), s3.len()], data)
        .expect("restriction of a valid tensor is valid")
}

fn lift_strategy(sub: &MixedStrategy, support: &[usize], n: usize) -> MixedStrategy {
    let mut probs = vec![Rational::zero(); n];
    for (slot, &action) in support.iter().enumerate() {
        probs[action] = sub.probs[slot].clone();
    }
    MixedStrategy::new(probs).expect("lifting preserves the simplex")
}

fn solve_one(sub: &PayoffTensor, opts: &SolveOptions) -> Result<SubgameSolution> {
    let d = sub.dims();
    if opts.exact && d[0] <= 3 && d[1] <= 2 && d[2] <= 2 {
        solve_subgame_exact2(sub)
    } else {
        solve_subgame_numeric(sub, &opts.tol, opts.seed, opts.lp_budget)
    }
}

fn check_scan_budget(game: &PayoffTensor) -> Result<(usize, usize, usize)> {
    if game.num_players() != 3 {
        return Err(Error::validation("support enumeration expects three players"));
    }
    let dims = game.dims();
    let k = dims[0];
    if k > SUPPORT_KCAP {
        return Err(Error::Budget {
            what: "player-1 actions in support enumeration",
            required: k as u128,
            cap: SUPPORT_KCAP as u128,
        });
    }
    let s2 = k.min(dims[1]);
    let s3 = k.min(dims[2]);
    let pairs = binom(dims[1], s2) * binom(dims[2], s3);
    if pairs > SUPPORT_PAIR_BUDGET {
        return Err(Error::Budget {
            what: "support pairs",
            required: pairs,
            cap: SUPPORT_PAIR_BUDGET,
        });
    }
    Ok((k, s2, s3))
}

/// Minmax value of a three-player game by scanning all support pairs of size
/// min(k, n_j). Exact when every visited subgame admits the exact engine;
/// otherwise the numeric engine's brackets are compared, refined on overlap,
/// and — if an overlap survives refinement — merged into one honest bracket
/// with `unconverged` set. The witness is lifted to full dimension and ties
/// keep the lexicographically first support pair.
pub fn minmax_support_enum(game: &PayoffTensor, opts: &SolveOptions) -> Result<SubgameSolution> {
    let (_, s2, s3) = check_scan_budget(game)?;
    let dims = game.dims().to_vec();
    let sup2 = enumerate_supports(dims[1], s2);
    let sup3 = enumerate_supports(dims[2], s3);

    let mut best: Option<(SubgameSolution, Vec<usize>, Vec<usize>)> = None;
    let mut merged_ambiguous = false;
    let mut global_lo: Option<Rational> = None;

    for set2 in &sup2 {
        for set3 in &sup3 {
            let sub = restrict_bullies(game, set2, set3);
            let mut sol = solve_one(&sub, opts)?;
            let fold_lo = |acc: &mut Option<Rational>, v: &GameValue| {
                let lo = v.enclosure(128).0;
                if acc.as_ref().is_none_or(|cur| lo < *cur) {
                    *acc = Some(lo);
                }
            };
            match &mut best {
                None => {
                    fold_lo(&mut global_lo, &sol.value);
                    best = Some((sol, set2.clone(), set3.clone()));
                }
                Some((bsol, bs2, bs3)) => {
                    let mut cmp = sol.value.compare(&bsol.value);
                    // Overlapping brackets: tighten the numeric sides before
                    // giving up on the ordering.
                    let mut round = 0;
                    while matches!(cmp, ValueCmp::Ambiguous) && round < 2 {
                        let tighter = SolveOptions {
                            tol: &opts.tol / &rat(64i64.pow(round + 1), 1),
                            lp_budget: opts.lp_budget.saturating_mul(4),
                            ..opts.clone()
                        };
                        if !sol.value.is_exact() {
                            sol = solve_one(&sub, &tighter)?;
                        }
                        if !bsol.value.is_exact() {
                            let bsub = restrict_bullies(game, bs2, bs3);
                            *bsol = solve_one(&bsub, &tighter)?;
                        }
                        cmp = sol.value.compare(&bsol.value);
                        round += 1;
                    }
                    fold_lo(&mut global_lo, &sol.value);
                    match cmp {
                        ValueCmp::Decided(Ordering::Less) => {
                            best = Some((sol, set2.clone(), set3.clone()));
                        }
                        ValueCmp::Decided(_) => {}
                        ValueCmp::Ambiguous => {
                            merged_ambiguous = true;
                            let new_hi = sol.value.enclosure(128).1;
                            let best_hi = bsol.value.enclosure(128).1;
                            if new_hi < best_hi {
                                best = Some((sol, set2.clone(), set3.clone()));
                            }
                        }
                    }
                }
            }
        }
    }

    let (win, set2, set3) = best.expect("at least one support pair exists");
    let lifted = BullyProfile::new(vec![
        lift_strategy(&win.profile.strategies[0], &set2, dims[1]),
        lift_strategy(&win.profile.strategies[1], &set3, dims[2]),
    ])?;
    let symbolic = win.symbolic.as_ref().map(|sym| {
        let lift_sym = |rows: &[(Rational, Rational)], support: &[usize], n: usize| {
            let mut out = vec![(Rational::zero(), Rational::zero()); n];
            for (slot, &action) in support.iter().enumerate() {
                out[action] = rows[slot].clone();
            }
            out
        };
        SymbolicProfile {
            d: sym.d.clone(),
            strategies: vec![
                lift_sym(&sym.strategies[0], &set2, dims[1]),
                lift_sym(&sym.strategies[1], &set3, dims[2]),
            ],
        }
    });

    let mut value = win.value.clone();
    let mut unconverged = win.unconverged;
    if merged_ambiguous {
        unconverged = true;
        let hi = value.enclosure(128).1;
        value = GameValue::bracket(global_lo.expect("scan visited a subgame"), hi);
    }
    Ok(SubgameSolution {
        value,
        profile: lifted,
        symbolic,
        unconverged,
        supports: Some((set2, set3)),
    })
}

/// Threshold query: is the minmax value <= alpha? Monotone in alpha. The scan
/// stops at the first support pair certified <= alpha; "no" requires every
/// pair to be certified above. Brackets that straddle alpha are re-solved
/// tighter once; a surviving straddle yields `Unknown` with the enclosure of
/// the minimum.
pub fn decide_minmax_leq(
    game: &PayoffTensor,
    alpha: &Rational,
    opts: &SolveOptions,
) -> Result<Decision> {
    let (_, s2, s3) = check_scan_budget(game)?;
    let dims = game.dims().to_vec();
    let sup2 = enumerate_supports(dims[1], s2);
    let sup3 = enumerate_supports(dims[2], s3);

    let mut ambiguous = false;
    let mut lo_min: Option<Rational> = None;
    let mut hi_min: Option<Rational> = None;

    for set2 in &sup2 {
        for set3 in &sup3 {
            let sub = restrict_bullies(game, set2, set3);
            let mut sol = solve_one(&sub, opts)?;
            // Exact forms decide by algebraic sign; brackets by endpoints.
            let verdict = loop {
                match &sol.value {
                    GameValue::Bracket { lo, hi } => {
                        if hi <= alpha {
                            break Some(true);
                        } else if lo > alpha {
                            break Some(false);
                        }
                        break None;
                    }
                    exact => match exact.cmp_rational(alpha) {
                        ValueCmp::Decided(Ordering::Greater) => break Some(false),
                        ValueCmp::Decided(_) => break Some(true),
                        ValueCmp::Ambiguous => unreachable!("exact forms decide"),
                    },
                }
            };
            let verdict = match verdict {
                None => {
                    // One tighter attempt before conceding.
                    let tighter = SolveOptions {
                        tol: &opts.tol / &rat(64, 1),
                        lp_budget: opts.lp_budget.saturating_mul(4),
                        ..opts.clone()
                    };
                    sol = solve_one(&sub, &tighter)?;
                    match &sol.value {
                        GameValue::Bracket { lo, hi } => {
                            if hi <= alpha {
                                Some(true)
                            } else if lo > alpha {
                                Some(false)
                            } else {
                                None
                            }
                        }
                        exact => match exact.cmp_rational(alpha) {
                            ValueCmp::Decided(Ordering::Greater) => Some(false),
                            _ => Some(true),
                        },
                    }
                }
                v => v,
            };
            let (lo, hi) = sol.value.enclosure(128);
            if lo_min.as_ref().is_none_or(|c| lo < *c) {
                lo_min = Some(lo);
            }
            if hi_min.as_ref().is_none_or(|c| hi < *c) {
                hi_min = Some(hi);
            }
            match verdict {
                Some(true) => return Ok(Decision::Yes),
                Some(false) => {}
                None => ambiguous = true,
            }
        }
    }
    if ambiguous {
        Ok(Decision::Unknown {
            lo: lo_min.expect("scan visited a subgame"),
            hi: hi_min.expect("scan visited a subgame"),
        })
    } else {
        Ok(Decision::No)
    }
}
