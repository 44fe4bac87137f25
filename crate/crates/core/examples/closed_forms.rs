//! Compares the closed-form Christoffel symbols, curvature and ∇R against
//! the generic tensor engine, symbolically and at a point.

use curvhomo::algebra::int;
use curvhomo::family::{crosscheck_fields, ClosedForms, EngineFamily, FamilySpec, PointCoords};
use curvhomo::report::Format;
use curvhomo::SeededSampler;

fn main() -> curvhomo::Result<()> {
    let s = 3;
    let spec = FamilySpec::monomial(s, int(1), 3)?;
    let closed = ClosedForms::new(&spec);
    let engine = EngineFamily::new(&spec, 1)?;
    let report = crosscheck_fields(&closed, &engine);
    print!("{}", report.emit(Format::Text));

    let mut sampler = SeededSampler::new(3, 10);
    let p = PointCoords::random(s, &mut sampler);
    let point = curvhomo::family::crosscheck_point(&closed, &engine, &p)?;
    print!("{}", point.emit(Format::Text));
    Ok(())
}
