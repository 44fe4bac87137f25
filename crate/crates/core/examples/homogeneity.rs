//! The scalar invariant alpha and the local homogeneity test built on it.

use curvhomo::algebra::{int, rat};
use curvhomo::family::{alpha, EngineFamily, FamilySpec, PointCoords};
use curvhomo::invariants::{alpha_via_quotient, homogeneity_obstruction};

fn main() -> curvhomo::Result<()> {
    let cubic = FamilySpec::monomial(2, int(1), 3)?;
    let quartic = FamilySpec::monomial(2, rat(-1, 6), 4)?;
    let points = [PointCoords::from_i64(&[1, 2], &[3, 4], &[0, 0]), PointCoords::origin(2)];

    for (name, spec) in [("cubic", &cubic), ("quartic", &quartic)] {
        let engine = EngineFamily::new(spec, 2)?;
        for p in &points {
            println!(
                "{name} at u={:?}: alpha = {}, quotient = {}, alpha^2 = {}",
                p.u.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                alpha(spec, p)?,
                alpha_via_quotient(spec, p)?,
                engine.alpha_k(p, 2)?
            );
        }
        println!("{name}: {}", homogeneity_obstruction(spec, &points)?);
    }
    Ok(())
}
