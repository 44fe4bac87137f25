//! The kernel A_V, its complement A_TV, and the structures induced on the
//! quotients, compared across two normalized bases.

use curvhomo::invariants::{induced_structures, kernel_subspace_av, lemma71_check, orthogonal_complement};
use curvhomo::model::{build_model, random_normalized_basis, ModelBasis};
use curvhomo::report::Format;
use curvhomo::SeededSampler;

fn main() -> curvhomo::Result<()> {
    let s = 2;
    let ms = build_model(s)?;
    let a_v = kernel_subspace_av(ms.curvature())?;
    let a_tv = orthogonal_complement(ms.metric(), &a_v)?;
    println!("dim A_V = {}, dim A_TV = {}", a_v.dim(), a_tv.dim());

    let ind = induced_structures(ms.metric(), ms.curvature(), &ModelBasis::standard(s))?;
    println!("g_U on the standard basis:");
    for r in 0..ind.g_u.rows() {
        let row: Vec<String> = ind.g_u.row(r).iter().map(|x| x.to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
    println!(
        "g_T well defined: {}, R_UT well defined: {}, pulls back to R: {}",
        ind.g_t_well_defined, ind.r_ut_well_defined, ind.r_ut_pulls_back
    );

    let mut sampler = SeededSampler::new(2, 10);
    let b1 = random_normalized_basis(&ms, &mut sampler);
    let b2 = random_normalized_basis(&ms, &mut sampler);
    print!("{}", lemma71_check(&ms, &b1, &b2)?.emit(Format::Text));
    Ok(())
}
