//! Embedded golden data for the worked submodule tables at `q = 8`,
//! `n = 4`, `r = 8`: the seven signatures, the eleven downward-closed
//! sets with their boundaries, and the monomial content of each
//! submodule given as representatives up to coordinate permutation.

/// The signature poset `(t_0, t_1, 8)` has exactly these seven nodes.
pub const SIGNATURES: [[u32; 3]; 7] = [
    [0, 0, 8],
    [0, 4, 8],
    [0, 8, 8],
    [2, 4, 8],
    [2, 8, 8],
    [4, 4, 8],
    [4, 8, 8],
];

/// One downward-closed set of the signature poset, with the monomial
/// content of the corresponding submodule.
pub struct GoldenIdeal {
    /// Maximal elements.
    pub boundary: &'static [[u32; 3]],
    /// All members.
    pub members: &'static [[u32; 3]],
    /// Monomial exponents spanning the submodule, each standing for
    /// itself and all its coordinate permutations; `None` means every
    /// monomial of the ambient space (all 161 of them).
    pub representatives: Option<&'static [[u32; 4]]>,
}

const REPS_1: &[[u32; 4]] = &[[4, 4, 0, 0]];
const REPS_2: &[[u32; 4]] = &[[4, 4, 0, 0], [6, 2, 0, 0], [4, 2, 2, 0]];
const REPS_3: &[[u32; 4]] = &[
    [4, 4, 0, 0],
    [6, 2, 0, 0],
    [4, 2, 2, 0],
    [7, 1, 0, 0],
    [6, 1, 1, 0],
    [5, 3, 0, 0],
    [5, 2, 1, 0],
    [4, 3, 1, 0],
    [4, 2, 1, 1],
];
const REPS_4: &[[u32; 4]] = &[[4, 4, 0, 0], [6, 2, 0, 0], [4, 2, 2, 0], [2, 2, 2, 2]];
const REPS_5: &[[u32; 4]] = &[
    [4, 4, 0, 0],
    [6, 2, 0, 0],
    [4, 2, 2, 0],
    [7, 1, 0, 0],
    [6, 1, 1, 0],
    [5, 3, 0, 0],
    [5, 2, 1, 0],
    [4, 3, 1, 0],
    [4, 2, 1, 1],
    [5, 1, 1, 1],
];
const REPS_6: &[[u32; 4]] = &[
    [4, 4, 0, 0],
    [6, 2, 0, 0],
    [4, 2, 2, 0],
    [2, 2, 2, 2],
    [7, 1, 0, 0],
    [6, 1, 1, 0],
    [5, 3, 0, 0],
    [5, 2, 1, 0],
    [4, 3, 1, 0],
    [4, 2, 1, 1],
];
const REPS_7: &[[u32; 4]] = &[
    [4, 4, 0, 0],
    [6, 2, 0, 0],
    [4, 2, 2, 0],
    [2, 2, 2, 2],
    [7, 1, 0, 0],
    [6, 1, 1, 0],
    [5, 3, 0, 0],
    [5, 2, 1, 0],
    [4, 3, 1, 0],
    [4, 2, 1, 1],
    [3, 3, 2, 0],
    [3, 2, 2, 1],
];
const REPS_8: &[[u32; 4]] = &[
    [4, 4, 0, 0],
    [6, 2, 0, 0],
    [4, 2, 2, 0],
    [2, 2, 2, 2],
    [7, 1, 0, 0],
    [6, 1, 1, 0],
    [5, 3, 0, 0],
    [5, 2, 1, 0],
    [4, 3, 1, 0],
    [4, 2, 1, 1],
    [5, 1, 1, 1],
];
const REPS_9: &[[u32; 4]] = &[
    [4, 4, 0, 0],
    [6, 2, 0, 0],
    [4, 2, 2, 0],
    [2, 2, 2, 2],
    [7, 1, 0, 0],
    [6, 1, 1, 0],
    [5, 3, 0, 0],
    [5, 2, 1, 0],
    [4, 3, 1, 0],
    [4, 2, 1, 1],
    [3, 3, 2, 0],
    [3, 2, 2, 1],
    [5, 1, 1, 1],
];

/// The eleven ideals, indexed 0 through 10.
pub const IDEALS: [GoldenIdeal; 11] = [
    GoldenIdeal { boundary: &[], members: &[], representatives: Some(&[]) },
    GoldenIdeal {
        boundary: &[[0, 0, 8]],
        members: &[[0, 0, 8]],
        representatives: Some(REPS_1),
    },
    GoldenIdeal {
        boundary: &[[0, 4, 8]],
        members: &[[0, 0, 8], [0, 4, 8]],
        representatives: Some(REPS_2),
    },
    GoldenIdeal {
        boundary: &[[2, 4, 8]],
        members: &[[0, 0, 8], [0, 4, 8], [2, 4, 8]],
        representatives: Some(REPS_3),
    },
    GoldenIdeal {
        boundary: &[[0, 8, 8]],
        members: &[[0, 0, 8], [0, 4, 8], [0, 8, 8]],
        representatives: Some(REPS_4),
    },
    GoldenIdeal {
        boundary: &[[4, 4, 8]],
        members: &[[0, 0, 8], [0, 4, 8], [2, 4, 8], [4, 4, 8]],
        representatives: Some(REPS_5),
    },
    GoldenIdeal {
        boundary: &[[0, 8, 8], [2, 4, 8]],
        members: &[[0, 0, 8], [0, 4, 8], [0, 8, 8], [2, 4, 8]],
        representatives: Some(REPS_6),
    },
    GoldenIdeal {
        boundary: &[[2, 8, 8]],
        members: &[[0, 0, 8], [0, 4, 8], [0, 8, 8], [2, 4, 8], [2, 8, 8]],
        representatives: Some(REPS_7),
    },
    GoldenIdeal {
        boundary: &[[0, 8, 8], [4, 4, 8]],
        members: &[[0, 0, 8], [0, 4, 8], [0, 8, 8], [2, 4, 8], [4, 4, 8]],
        representatives: Some(REPS_8),
    },
    GoldenIdeal {
        boundary: &[[2, 8, 8], [4, 4, 8]],
        members: &[[0, 0, 8], [0, 4, 8], [0, 8, 8], [2, 4, 8], [2, 8, 8], [4, 4, 8]],
        representatives: Some(REPS_9),
    },
    GoldenIdeal {
        boundary: &[[4, 8, 8]],
        members: &[
            [0, 0, 8],
            [0, 4, 8],
            [0, 8, 8],
            [2, 4, 8],
            [2, 8, 8],
            [4, 4, 8],
            [4, 8, 8],
        ],
        representatives: None,
    },
];

/// Number of monomials in the full space at `q = 8`, `n = 4`, `r = 8`.
pub const FULL_MONOMIAL_COUNT: usize = 161;
