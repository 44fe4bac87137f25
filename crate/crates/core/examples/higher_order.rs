//! Higher-order Jacobi operators on spacelike and timelike k-planes,
//! including the canonical timelike witness planes.

use curvhomo::jacobi::{canonical_timelike_witnesses, ell_invariant, osserman_scan, rank_profile, CausalType, JacobiContext};
use curvhomo::model::{build_model, ModelBasis};
use curvhomo::SeededSampler;

fn main() -> curvhomo::Result<()> {
    let s = 3;
    let ms = build_model(s)?;
    let ctx = JacobiContext::from_model(&ms);
    let mut sampler = SeededSampler::new(5, 10);

    for k in 2..=s {
        println!("{}", osserman_scan(&ctx, CausalType::Spacelike, k, 20, &mut sampler, &[])?);
    }
    for k in s + 2..=2 * s {
        println!("{}", osserman_scan(&ctx, CausalType::Timelike, k, 20, &mut sampler, &[])?);
    }

    let std = ModelBasis::standard(s);
    for k in 2..=s + 1 {
        let (p1, p2) = canonical_timelike_witnesses(&ms, k)?;
        let r1 = rank_profile(&ctx.jacobi_plane(&p1)?);
        let r2 = rank_profile(&ctx.jacobi_plane(&p2)?);
        println!("k={k}: witness ell {} profile {r1} vs ell {} profile {r2}", ell_invariant(&p1, &std)?, ell_invariant(&p2, &std)?);
    }
    Ok(())
}
