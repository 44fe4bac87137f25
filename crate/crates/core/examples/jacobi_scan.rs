//! Spacelike and timelike Jacobi operator scans on the model space.

use curvhomo::jacobi::{jordan_partition, osserman_scan, rank_profile, CausalType, JacobiContext};
use curvhomo::model::build_model;
use curvhomo::SeededSampler;

fn main() -> curvhomo::Result<()> {
    let ms = build_model(3)?;
    let ctx = JacobiContext::from_model(&ms);
    let mut sampler = SeededSampler::new(11, 10);

    let spacelike = osserman_scan(&ctx, CausalType::Spacelike, 1, 40, &mut sampler, &[])?;
    println!("{spacelike}");
    println!("  N^3 = 0: {}, self-adjoint: {}", spacelike.cube_vanishes, spacelike.self_adjoint);

    // T_1 and Z_1^- are timelike with different Jordan types.
    let injected = vec![vec![ms.t(0)], vec![ms.z_minus(0)]];
    let timelike = osserman_scan(&ctx, CausalType::Timelike, 1, 40, &mut sampler, &injected)?;
    println!("{timelike}");

    for (name, x) in [("T_1", ms.t(0)), ("Z_1^-", ms.z_minus(0))] {
        let profile = rank_profile(&ctx.jacobi(&x)?);
        println!("  J({name}): profile {profile}, partition {}", jordan_partition(&profile)?);
    }
    Ok(())
}
