/// Resource caps for the enumeration layers.
///
/// Every cap is a hard bound checked before work starts; exceeding one yields
/// `Error::ResourceLimit` rather than an incomplete answer.
#[derive(Clone, Debug)]
pub struct Limits {
    /// Maximum number of lattice-point candidates any single enumeration
    /// (parallelepiped scan or box sweep) may visit.
    pub max_enum_points: u64,
    /// Truncation bound on the unconstrained dual coordinates when searching
    /// sufficiency regions for non-interior `w`. A truncated search that
    /// finds nothing reports "unknown", never "empty".
    pub level_one_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum_points: 100_000_000,
            level_one_bound: 16,
        }
    }
}
