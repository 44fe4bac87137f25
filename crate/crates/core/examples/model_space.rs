//! Builds the model space for a few ranks and checks its basic structure.

use curvhomo::model::{build_model, random_normalized_basis, validate_normalized_basis, ModelBasis};
use curvhomo::tensor::{check_first_bianchi, check_pair_symmetries};
use curvhomo::SeededSampler;

fn main() -> curvhomo::Result<()> {
    for s in 2..=4 {
        let ms = build_model(s)?;
        let inertia = ms.metric().symmetric_signature()?;
        println!(
            "s={s}: dim {}, signature ({},{}), nonzero R entries {}",
            ms.dim(),
            inertia.pos,
            inertia.neg,
            ms.curvature().count_nonzero()
        );
        println!(
            "  pair symmetry violations {}, Bianchi violations {}",
            check_pair_symmetries(ms.curvature())?.len(),
            check_first_bianchi(ms.curvature())?.len()
        );
        let standard = validate_normalized_basis(&ms, &ModelBasis::standard(s))?;
        let mut sampler = SeededSampler::new(7, 10);
        let random = random_normalized_basis(&ms, &mut sampler);
        let random_violations = validate_normalized_basis(&ms, &random)?;
        println!("  standard basis violations {}, random basis violations {}", standard.len(), random_violations.len());
    }
    Ok(())
}
