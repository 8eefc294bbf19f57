#![allow(dead_code)]

use dehn_core::diagram::parse_pd;
use dehn_core::{PdCode, Polynomial};

pub struct Knot {
    pub name: &'static str,
    pub pd: &'static str,
    /// Alexander polynomial, constant term first.
    pub alexander: &'static [i64],
}

pub const UNKNOT_KINK: &str = "[[1,2,2,1]]";
pub const TREFOIL: &str = "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]";
pub const TREFOIL_KINKED: &str = "[[1,4,2,5],[3,8,4,1],[5,2,6,3],[6,7,7,8]]";
pub const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
pub const FIGURE_EIGHT_KINKED: &str = "X[4,2,5,1] X[10,6,1,5] X[6,3,7,4] X[2,7,3,8] X[8,9,9,10]";

pub const CORPUS: &[Knot] = &[
    Knot { name: "unknot (one kink)", pd: UNKNOT_KINK, alexander: &[1] },
    Knot { name: "3_1", pd: TREFOIL, alexander: &[1, -1, 1] },
    Knot { name: "4_1", pd: FIGURE_EIGHT, alexander: &[1, -3, 1] },
    Knot { name: "5_1", pd: "X[1,6,2,7] X[3,8,4,9] X[5,10,6,1] X[7,2,8,3] X[9,4,10,5]", alexander: &[1, -1, 1, -1, 1] },
    Knot { name: "5_2", pd: "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]", alexander: &[2, -3, 2] },
    Knot {
        name: "6_1",
        pd: "X[1,4,2,5] X[7,10,8,11] X[3,9,4,8] X[9,3,10,2] X[5,12,6,1] X[11,6,12,7]",
        alexander: &[2, -5, 2],
    },
];

pub fn pd(s: &str) -> PdCode {
    parse_pd(s).unwrap()
}

pub fn poly(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}
