//! Threat points via small-bully discretization.
//!
//! When one punisher has only k actions, the minmax value is a Lipschitz
//! function of that punisher's mixed strategy: fixing it leaves a
//! two-player zero-sum game between player 1 and the other punisher.
//! [`bully_threat_value`] therefore scans a (1/r)-lattice of the small
//! punisher's simplex, solves an exact LP at every lattice point, and
//! returns a bracket whose width is controlled by the mesh. The lattice
//! resolution is chosen so every mixed strategy lies within L1 distance
//! epsilon of a lattice point.
//!
//! [`threat_point`] assembles the per-player vector of minmax values,
//! viewing the game through each player's own payoff tensor in turn and
//! dispatching to the cheapest applicable solver.

use crate::error::{Error, Result};
use crate::exact_two::solve_two_by;
use crate::game::{BullyProfile, MixedStrategy, PayoffTensor};
use crate::oracle::{composition_count, first_composition, next_composition, oracle_minmax};
use crate::rational::{ceil_rational, rat_int, Rational};
use crate::support_enum::{matrix_rows, minmax_support_enum, SolveOptions};
use crate::value::GameValue;
use crate::zerosum::zs_value;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// Cap on the number of lattice points scanned per call.
pub const LATTICE_BUDGET: u128 = 1_000_000;

/// threat_point tries support enumeration only when the threatened player
/// has at most this many actions, and the lattice scan only when a
/// punisher has at most this many.
pub const THREAT_SUPPORT_KCAP: usize = 3;
pub const THREAT_BULLY_KCAP: usize = 3;

/// All probability vectors on the (k-1)-simplex whose coordinates are
/// multiples of 1/r, in lexicographic order. Every point of the simplex is
/// within L1 distance 2(k-1)/r of some lattice point: round k-1
/// coordinates down to the grid and give the excess (at most (k-1)/r) to
/// the last one.
pub fn simplex_lattice(k: usize, r: u32) -> Result<Vec<MixedStrategy>> {
    if k == 0 {
        return Err(Error::validation("simplex needs at least one coordinate"));
    }
    if r == 0 {
        return Err(Error::validation("lattice resolution must be at least 1"));
    }
    let count = composition_count(r, k).unwrap_or(u128::MAX);
    if count > LATTICE_BUDGET {
        return Err(Error::Budget {
            what: "simplex lattice points",
            required: count,
            cap: LATTICE_BUDGET,
        });
    }
    let den = BigInt::from(r);
    let mut out = Vec::with_capacity(count as usize);
    let mut comp = first_composition(r, k);
    loop {
        let probs = comp
            .iter()
            .map(|&c| Rational::new(BigInt::from(c), den.clone()))
            .collect();
        out.push(MixedStrategy::new(probs)?);
        if !next_composition(&mut comp) {
            break;
        }
    }
    Ok(out)
}

/// Minmax value of a three-player game whose second player (the small
/// bully) has few actions, to additive accuracy epsilon times the payoff
/// span. Payoffs must lie in [0,1]; normalize first. Returns the bracket
/// [v_hat - eps*(u_max - u_min), v_hat] (clamped below at u_min, since no
/// profile pays less) together with the witness profile (lattice sigma_2,
/// LP-optimal sigma_3) attaining the upper endpoint exactly.
pub fn bully_threat_value(
    game: &PayoffTensor,
    epsilon: &Rational,
) -> Result<(GameValue, BullyProfile)> {
    if game.num_players() != 3 {
        return Err(Error::validation("the lattice scan expects three players"));
    }
    if !epsilon.is_positive() {
        return Err(Error::validation("epsilon must be positive"));
    }
    let (u_min, u_max) = game.payoff_range();
    if u_min.is_negative() || u_max > rat_int(1) {
        return Err(Error::validation(
            "payoffs must lie in [0,1]; normalize first",
        ));
    }
    let k = game.dims()[1];
    // L1 mesh 2(k-1)/r <= epsilon.
    let r = ceil_rational(&(rat_int(2 * (k as i64 - 1)) / epsilon))
        .to_u32()
        .ok_or_else(|| Error::Budget {
            what: "lattice resolution",
            required: u128::MAX,
            cap: LATTICE_BUDGET,
        })?
        .max(1);

    let mut best: Option<(Rational, MixedStrategy, MixedStrategy)> = None;
    for sigma2 in simplex_lattice(k, r)? {
        let m = game.contract_axis(1, &sigma2.probs)?;
        let sol = zs_value(&matrix_rows(&m))?;
        if best.as_ref().is_none_or(|(v, _, _)| sol.value < *v) {
            best = Some((sol.value, sigma2, sol.col_strategy));
        }
    }
    let (v_hat, sigma2, sigma3) = best.expect("lattice is never empty");
    let profile = BullyProfile::new(vec![sigma2, sigma3])?;

    let span = &u_max - &u_min;
    let lo = (&v_hat - epsilon * &span).max(u_min);
    let value = if lo == v_hat {
        GameValue::exact(v_hat)
    } else {
        GameValue::bracket(lo, v_hat)
    };
    Ok((value, profile))
}

/// One coordinate of a threat point: the minmax value of the game viewed
/// with some player in the threatened seat, annotated with the solver that
/// produced it. `value` is None exactly when `method` is "unsupported".
#[derive(Clone, Debug)]
pub struct ThreatPointEntry {
    pub value: Option<GameValue>,
    pub method: &'static str,
    pub profile: Option<BullyProfile>,
}

impl ThreatPointEntry {
    fn unsupported() -> Self {
        ThreatPointEntry {
            value: None,
            method: "unsupported",
            profile: None,
        }
    }
}

/// The vector of minmax values, one per player. `payoffs[p]` is player
/// p+1's own payoff tensor, indexed by the common action profile; entries
/// without a tensor, and entries no solver can handle within budget, come
/// back annotated rather than failing the whole call.
///
/// Dispatch order per entry, viewing player p as the threatened player:
/// the two-row exact solver for 0-1 games with two own actions, support
/// enumeration when p has at most [`THREAT_SUPPORT_KCAP`] actions, the
/// lattice scan when some punisher has at most [`THREAT_BULLY_KCAP`], and
/// the grid oracle otherwise.
pub fn threat_point(
    payoffs: &[Option<&PayoffTensor>; 3],
    epsilon: &Rational,
) -> Result<Vec<ThreatPointEntry>> {
    if !epsilon.is_positive() {
        return Err(Error::validation("epsilon must be positive"));
    }
    let dims = payoffs
        .iter()
        .flatten()
        .map(|t| t.dims())
        .next()
        .ok_or_else(|| Error::validation("no payoff tensor supplied"))?;
    if dims.len() != 3 {
        return Err(Error::validation("threat points need three players"));
    }
    for t in payoffs.iter().flatten() {
        if t.dims() != dims {
            return Err(Error::validation(format!(
                "payoff tensors disagree on dimensions: {:?} vs {:?}",
                t.dims(),
                dims
            )));
        }
    }

    let mut out = Vec::with_capacity(3);
    for (p, tensor) in payoffs.iter().enumerate() {
        let Some(tensor) = tensor else {
            out.push(ThreatPointEntry::unsupported());
            continue;
        };
        // View the game with player p in the threatened seat.
        let view = match p {
            0 => (*tensor).clone(),
            1 => tensor.permute_axes(&[1, 0, 2])?,
            _ => tensor.permute_axes(&[2, 0, 1])?,
        };
        out.push(solve_entry(&view, epsilon)?);
    }
    Ok(out)
}

fn solve_entry(view: &PayoffTensor, epsilon: &Rational) -> Result<ThreatPointEntry> {
    let dims = view.dims().to_vec();

    if dims[0] == 2 && view.is_zero_one() {
        let (value, profile) = solve_two_by(view)?;
        return Ok(ThreatPointEntry {
            value: Some(value),
            method: "exact-two",
            profile: Some(profile),
        });
    }

    if dims[0] <= THREAT_SUPPORT_KCAP {
        let opts = SolveOptions {
            tol: epsilon / rat_int(8),
            ..SolveOptions::default()
        };
        match minmax_support_enum(view, &opts) {
            Ok(sol) => {
                return Ok(ThreatPointEntry {
                    value: Some(sol.value),
                    method: "support-enum",
                    profile: Some(sol.profile),
                });
            }
            Err(Error::Budget { .. }) => {}
            Err(e) => return Err(e),
        }
    }

    if dims[1].min(dims[2]) <= THREAT_BULLY_KCAP {
        // Put the small punisher in the middle seat and rescale to [0,1].
        let swapped = dims[2] < dims[1];
        let arranged = if swapped { view.swap_bullies()? } else { view.clone() };
        let (unit, scale, shift) = arranged.normalize_unit();
        match bully_threat_value(&unit, epsilon) {
            Ok((value, profile)) => {
                let span = scale.recip();
                let back = value.affine(&span, &(-&shift * &span));
                let mut strategies = profile.strategies;
                if swapped {
                    strategies.reverse();
                }
                return Ok(ThreatPointEntry {
                    value: Some(back),
                    method: "bully-threat",
                    profile: Some(BullyProfile::new(strategies)?),
                });
            }
            Err(Error::Budget { .. }) => {}
            Err(e) => return Err(e),
        }
    }

    // Grid oracle: bracket width is 2 * bullies * (n_max - 1) / r times the
    // span, so r = ceil(4 (n_max - 1) / epsilon) meets the epsilon contract.
    let n_max = dims[1].max(dims[2]) as i64;
    let r = ceil_rational(&(rat_int(4 * (n_max - 1)) / epsilon))
        .to_u32()
        .unwrap_or(u32::MAX)
        .max(1);
    match oracle_minmax(view, r) {
        Ok(res) => Ok(ThreatPointEntry {
            value: Some(res.bracket()),
            method: "oracle",
            profile: Some(res.witness),
        }),
        Err(Error::Budget { .. }) => Ok(ThreatPointEntry::unsupported()),
        Err(e) => Err(e),
    }
}
