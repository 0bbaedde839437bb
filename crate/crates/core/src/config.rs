/// Resource caps for the exhaustive verifiers and searches.
///
/// Exceeding a cap is always reported as "not verified" or a distinct error,
/// never as a silent pass.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Maximum number of composable triples scanned by associativity checks.
    pub max_triples: usize,
    /// Maximum number of quadruples scanned by the exchange-identity check.
    pub max_quadruples: usize,
    /// Maximum number of cells a symmetroid closure may generate.
    pub max_cells: usize,
    /// Hard caps for the groupoid isomorphism search.
    pub max_iso_objects: usize,
    pub max_iso_arrows: usize,
    /// Maximum number of bisections enumerated.
    pub max_bisections: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_triples: 1_000_000,
            max_quadruples: 100_000_000,
            max_cells: 100_000,
            max_iso_objects: 10,
            max_iso_arrows: 200,
            max_bisections: 100_000,
        }
    }
}

impl Limits {
    /// Limits large enough that every check in the desk-scale corpus is exhaustive.
    pub fn exhaustive() -> Self {
        Limits {
            max_triples: usize::MAX,
            max_quadruples: usize::MAX,
            max_cells: usize::MAX,
            max_iso_objects: 64,
            max_iso_arrows: 4096,
            max_bisections: usize::MAX,
        }
    }
}
