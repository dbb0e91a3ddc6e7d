/// Relative tolerances used throughout the crate.
///
/// Every threshold is multiplied by a problem scale at the point of use,
/// so the defaults are dimensionless.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Degeneracy of norms and dot products (zero vectors, parallel axes).
    pub zero: f64,
    /// Boundary cases such as a = c, tangency, containment.
    pub boundary: f64,
    /// Width of the parabolic band around ερ = 1.
    pub band: f64,
    /// Radius equality for bisectors.
    pub radius_eq: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            zero: 1e-12,
            boundary: 1e-10,
            band: 1e-9,
            radius_eq: 1e-10,
        }
    }
}

impl Tolerances {
    /// All thresholds multiplied by `factor`.
    pub fn scaled(factor: f64) -> Self {
        let d = Tolerances::default();
        Tolerances {
            zero: d.zero * factor,
            boundary: d.boundary * factor,
            band: d.band * factor,
            radius_eq: d.radius_eq * factor,
        }
    }
}
