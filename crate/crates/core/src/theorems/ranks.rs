use super::{builder, pow_u128, want_sub, Instance, VerdictReport};
use crate::config::Config;
use crate::detkit::rank_census;
use crate::error::Result;
use crate::gf::Field;

/// Checks the named rank bounds on the exact rank census; vacuous when none
/// of them applies to the instance.
fn rank_bounds(id: &str, names: &[&str], hypothesis: &str, inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    let sub = want_sub(id, inst)?;
    let mut b = builder(id, inst);
    let census = rank_census(sub, cfg)?;
    let total: u64 = census.counts.values().sum();
    b.num("rank_counts", &census.counts).num("max_rank", census.max_rank());
    b.require(
        "rank counts sum to q^d",
        total as u128 == pow_u128(sub.field().order(), sub.dim()),
    );
    let lines: Vec<_> = census.bounds.iter().filter(|l| names.contains(&l.name.as_str())).collect();
    if lines.is_empty() {
        return Ok(b.vacuous(hypothesis));
    }
    for line in lines {
        b.num(&line.name, line);
        b.require(
            &format!("{}: {} elements of rank >= {} against bound {}", line.name, line.count, line.min_rank, line.bound),
            line.holds,
        );
    }
    Ok(b.finish())
}

pub(super) fn full_rank(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    rank_bounds("T7.1", &["full_rank", "full_rank_serre"], "needs square matrices with an invertible element", inst, cfg)
}

pub(super) fn max_rank(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    rank_bounds("T7.2", &["max_rank"], "needs a nonzero subspace", inst, cfg)
}

pub(super) fn skew_full_rank(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    rank_bounds("T7.3", &["skew_full_rank"], "needs skew matrices of even size with an invertible element", inst, cfg)
}

pub(super) fn skew_max_rank(inst: &Instance, cfg: &Config) -> Result<VerdictReport> {
    rank_bounds("T7.4", &["skew_max_rank"], "needs skew matrices", inst, cfg)
}
