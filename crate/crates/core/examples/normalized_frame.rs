//! Computes the normalized frame at a point and checks that it carries the
//! metric and curvature of the model space.

use curvhomo::algebra::int;
use curvhomo::family::{alpha, check_normalization, normalized_basis_at, FamilySpec, PointCoords};

fn main() -> curvhomo::Result<()> {
    let spec = FamilySpec::monomial(2, int(1), 3)?;
    let p = PointCoords::from_i64(&[1, 2], &[3, 4], &[0, 0]);
    let data = normalized_basis_at(&spec, &p)?;
    let eps: Vec<String> = data.epsilon.iter().map(|e| e.to_string()).collect();
    let rho: Vec<String> = data.rho.iter().map(|r| r.to_string()).collect();
    println!("epsilon = [{}]", eps.join(", "));
    println!("rho     = [{}]", rho.join(", "));
    for (i, v) in data.frame.vectors().iter().enumerate() {
        let row: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        println!("e{i} = ({})", row.join(", "));
    }
    let violations = check_normalization(&spec, &p, &data)?;
    println!("normalization violations: {}", violations.len());
    println!("alpha at p = {}", alpha(&spec, &p)?);
    Ok(())
}
