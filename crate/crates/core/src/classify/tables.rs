//! Static data for the 21 singularity types: reference gap functions,
//! semigroup elements, local models, Schubert shapes and the conditions on
//! the gap function of a linear system.

use super::{AmbiguousPair, SingularityCase as C, SingularityType};

/// `(branch, exponent, coefficient)` terms of a generator.
pub(crate) type Terms = &'static [(usize, usize, i64)];

pub(crate) struct CaseData {
    pub case: C,
    pub delta: usize,
    pub branches: usize,
    pub name: &'static str,
    /// Cells `(β, λ(β))` at which the reference gap function jumps; on
    /// `N^r` it is the maximum over highlighted `β <= α`.
    pub highlighted: &'static [(&'static [usize], usize)],
    /// Valuations realized by the local model, `None` is `∞`. When
    /// `symmetric` is set, all branch permutations are included as well.
    pub semigroup: &'static [&'static [Option<usize>]],
    pub symmetric: bool,
    pub generators: &'static [(&'static str, Terms)],
    pub relations: &'static [&'static str],
    /// Schubert partition as offsets below `n`: `[0, 1]` is `(n, n-1)`.
    pub partition: &'static [usize],
    /// Codimension of the family, `a n - b` stored as `(a, b)`.
    pub codim: (usize, usize),
}

const INF: Option<usize> = None;

pub(crate) static CASES: [CaseData; 21] = [
    CaseData {
        case: C::T1_1,
        delta: 1,
        branches: 1,
        name: "cusp",
        highlighted: &[(&[1], 0), (&[2], 1)],
        semigroup: &[&[Some(2)], &[Some(3)]],
        symmetric: false,
        generators: &[("x", &[(0, 2, 1)]), ("y", &[(0, 3, 1)])],
        relations: &["x^3-y^2"],
        partition: &[0],
        codim: (1, 1),
    },
    CaseData {
        case: C::T1_2,
        delta: 1,
        branches: 2,
        name: "node",
        highlighted: &[(&[1, 1], 1)],
        semigroup: &[&[INF, Some(1)], &[Some(1), INF]],
        symmetric: false,
        generators: &[("x", &[(0, 1, 1)]), ("y", &[(1, 1, 1)])],
        relations: &["xy"],
        partition: &[0],
        codim: (1, 2),
    },
    CaseData {
        case: C::T2_1a,
        delta: 2,
        branches: 1,
        name: "(3,4,5)-cusp",
        highlighted: &[(&[1], 0), (&[2], 1), (&[3], 2)],
        semigroup: &[&[Some(3)], &[Some(4)], &[Some(5)]],
        symmetric: false,
        generators: &[("x_1", &[(0, 3, 1)]), ("x_2", &[(0, 4, 1)]), ("x_3", &[(0, 5, 1)])],
        relations: &["x_1x_3-x_2^2", "x_1^3-x_2x_3", "x_1^2x_2-x_3^2"],
        partition: &[0, 0],
        codim: (2, 1),
    },
    CaseData {
        case: C::T2_1b,
        delta: 2,
        branches: 1,
        name: "rhamphoid cusp",
        highlighted: &[(&[1], 0), (&[2], 1), (&[4], 2)],
        semigroup: &[&[Some(2)], &[Some(4)], &[Some(5)]],
        symmetric: false,
        generators: &[("x", &[(0, 2, 1)]), ("y", &[(0, 5, 1)])],
        relations: &["x^5-y^2"],
        partition: &[0, 1],
        codim: (2, 2),
    },
    CaseData {
        case: C::T2_2a,
        delta: 2,
        branches: 2,
        name: "tacnode",
        highlighted: &[(&[1, 1], 1), (&[2, 2], 2)],
        semigroup: &[&[INF, Some(2)], &[INF, Some(3)], &[Some(2), INF], &[Some(3), INF], &[Some(1), Some(1)]],
        symmetric: false,
        generators: &[("x", &[(0, 1, 1), (1, 1, 1)]), ("y", &[(1, 2, 1)])],
        relations: &["y(x^2-y)"],
        partition: &[0, 1],
        codim: (2, 3),
    },
    CaseData {
        case: C::T2_2b,
        delta: 2,
        branches: 2,
        name: "cusp with smooth branch",
        highlighted: &[(&[1, 1], 1), (&[2, 1], 2)],
        semigroup: &[&[Some(2), INF], &[Some(3), INF], &[INF, Some(1)]],
        symmetric: false,
        generators: &[("x", &[(1, 1, 1)]), ("y", &[(0, 2, 1)]), ("z", &[(0, 3, 1)])],
        relations: &["xy", "xz", "y^3-z^2"],
        partition: &[0, 0],
        codim: (2, 2),
    },
    CaseData {
        case: C::T2_3,
        delta: 2,
        branches: 3,
        name: "ordinary triple point",
        highlighted: &[(&[1, 1, 1], 2)],
        semigroup: &[&[Some(1), INF, INF], &[INF, Some(1), INF], &[INF, INF, Some(1)]],
        symmetric: false,
        generators: &[("x", &[(0, 1, 1)]), ("y", &[(1, 1, 1)]), ("z", &[(2, 1, 1)])],
        relations: &["xy", "xz", "yz"],
        partition: &[0, 0],
        codim: (2, 3),
    },
    CaseData {
        case: C::T3_1a,
        delta: 3,
        branches: 1,
        name: "(4,5,6,7)-cusp",
        highlighted: &[(&[1], 0), (&[2], 1), (&[3], 2), (&[4], 3)],
        semigroup: &[&[Some(4)], &[Some(5)], &[Some(6)], &[Some(7)]],
        symmetric: false,
        generators: &[("x_1", &[(0, 4, 1)]), ("x_2", &[(0, 5, 1)]), ("x_3", &[(0, 6, 1)]), ("x_4", &[(0, 7, 1)])],
        relations: &[
            "x_1x_3-x_2^2",
            "x_1x_4-x_2x_3",
            "x_2x_4-x_3^2",
            "x_1^2x_3-x_4^2",
            "x_1^2x_2-x_3x_4",
            "x_1^3-x_2x_4",
        ],
        partition: &[0, 0, 0],
        codim: (3, 1),
    },
    CaseData {
        case: C::T3_1b,
        delta: 3,
        branches: 1,
        name: "(3,5,7)-cusp",
        highlighted: &[(&[1], 0), (&[2], 1), (&[3], 2), (&[5], 3)],
        semigroup: &[&[Some(3)], &[Some(5)], &[Some(7)]],
        symmetric: false,
        generators: &[("x_1", &[(0, 3, 1)]), ("x_2", &[(0, 5, 1)]), ("x_3", &[(0, 7, 1)])],
        relations: &["x_1x_3-x_2^2", "x_1^3x_2-x_3^2", "x_2x_3-x_1^4"],
        partition: &[0, 0, 1],
        codim: (3, 2),
    },
    CaseData {
        case: C::T3_1c,
        delta: 3,
        branches: 1,
        name: "(3,4)-cusp",
        highlighted: &[(&[1], 0), (&[2], 1), (&[3], 2), (&[6], 3)],
        semigroup: &[&[Some(3)], &[Some(4)]],
        symmetric: false,
        generators: &[("x", &[(0, 3, 1)]), ("y", &[(0, 4, 1)])],
        relations: &["x^4-y^3"],
        partition: &[0, 0, 2],
        codim: (3, 3),
    },
    CaseData {
        case: C::T3_1d,
        delta: 3,
        branches: 1,
        name: "(2,7)-cusp",
        highlighted: &[(&[1], 0), (&[2], 1), (&[4], 2), (&[6], 3)],
        semigroup: &[&[Some(2)], &[Some(7)]],
        symmetric: false,
        generators: &[("x", &[(0, 2, 1)]), ("y", &[(0, 7, 1)])],
        relations: &["x^7-y^2"],
        partition: &[0, 1],
        codim: (2, 2),
    },
    CaseData {
        case: C::T3_2a,
        delta: 3,
        branches: 2,
        name: "(3,4,5)-cusp with smooth branch",
        highlighted: &[(&[1, 1], 1), (&[2, 1], 2), (&[3, 1], 3)],
        semigroup: &[&[Some(3), INF], &[Some(4), INF], &[Some(5), INF], &[INF, Some(1)]],
        symmetric: false,
        generators: &[
            ("x_1", &[(0, 3, 1)]),
            ("x_2", &[(0, 4, 1)]),
            ("x_3", &[(0, 5, 1)]),
            ("y", &[(1, 1, 1)]),
        ],
        relations: &["x_1y", "x_2y", "x_3y", "x_1x_3-x_2^2", "x_1^3-x_2x_3", "x_1^2x_2-x_3^2"],
        partition: &[0, 0, 0],
        codim: (3, 2),
    },
    CaseData {
        case: C::T3_2b,
        delta: 3,
        branches: 2,
        name: "rhamphoid cusp with smooth branch",
        highlighted: &[(&[1, 1], 1), (&[2, 1], 2), (&[4, 1], 3)],
        semigroup: &[&[Some(2), INF], &[Some(5), INF], &[INF, Some(1)]],
        symmetric: false,
        generators: &[("x_1", &[(0, 2, 1)]), ("x_2", &[(0, 5, 1)]), ("y", &[(1, 1, 1)])],
        relations: &["x_1y", "x_2y", "x_1^5-x_2^2"],
        partition: &[0, 0, 1],
        codim: (3, 3),
    },
    CaseData {
        case: C::T3_2c,
        delta: 3,
        branches: 2,
        name: "two independent cusps",
        highlighted: &[(&[1, 1], 1), (&[2, 1], 2), (&[1, 2], 2), (&[2, 2], 3)],
        semigroup: &[&[Some(2), INF], &[Some(3), INF], &[INF, Some(2)], &[INF, Some(3)]],
        symmetric: false,
        generators: &[
            ("x_1", &[(0, 2, 1)]),
            ("x_2", &[(0, 3, 1)]),
            ("y_1", &[(1, 2, 1)]),
            ("y_2", &[(1, 3, 1)]),
        ],
        relations: &["x_1y_1", "x_1y_2", "x_2y_1", "x_2y_2", "x_1^3-x_2^2", "y_1^3-y_2^2"],
        partition: &[0, 0, 0],
        codim: (3, 2),
    },
    CaseData {
        case: C::T3_2d,
        delta: 3,
        branches: 2,
        name: "cusp with collinear smooth branch",
        highlighted: &[(&[1, 1], 1), (&[2, 1], 2), (&[3, 2], 3)],
        semigroup: &[
            &[Some(3), INF],
            &[Some(4), INF],
            &[Some(5), INF],
            &[INF, Some(2)],
            &[INF, Some(3)],
            &[Some(2), Some(1)],
        ],
        symmetric: false,
        generators: &[("x", &[(0, 2, 1), (1, 1, 1)]), ("y", &[(0, 3, 1)]), ("z", &[(1, 2, 1)])],
        relations: &["yz", "z(x^2-z)", "x^3-y^2-xz"],
        partition: &[0, 0, 1],
        codim: (3, 3),
    },
    CaseData {
        case: C::T3_2e,
        delta: 3,
        branches: 2,
        name: "cusp with coplanar smooth branch",
        highlighted: &[(&[1, 1], 1), (&[2, 1], 2), (&[4, 2], 3)],
        semigroup: &[&[Some(2), INF], &[Some(5), INF], &[INF, Some(2)], &[INF, Some(3)], &[Some(3), Some(1)]],
        symmetric: false,
        generators: &[("x", &[(0, 3, 1), (1, 1, 1)]), ("y", &[(0, 2, 1)])],
        relations: &["y(x^2-y^3)"],
        partition: &[0, 0, 2],
        codim: (3, 4),
    },
    CaseData {
        case: C::T3_2f,
        delta: 3,
        branches: 2,
        name: "node with third order contact",
        highlighted: &[(&[1, 1], 1), (&[2, 2], 2), (&[3, 3], 3)],
        semigroup: &[
            &[Some(3), INF],
            &[Some(4), INF],
            &[Some(5), INF],
            &[INF, Some(3)],
            &[INF, Some(4)],
            &[INF, Some(5)],
            &[Some(1), Some(1)],
        ],
        symmetric: false,
        generators: &[("x", &[(0, 1, 1), (1, 1, 1)]), ("y", &[(0, 3, 1)])],
        relations: &["y(x^3-y)"],
        partition: &[0, 1],
        codim: (2, 3),
    },
    CaseData {
        case: C::T3_3a,
        delta: 3,
        branches: 3,
        name: "cusp with two smooth branches",
        highlighted: &[(&[1, 1, 1], 2), (&[1, 1, 2], 3)],
        semigroup: &[&[Some(1), INF, INF], &[INF, Some(1), INF], &[INF, INF, Some(2)], &[INF, INF, Some(3)]],
        symmetric: false,
        generators: &[("x_1", &[(0, 1, 1)]), ("x_2", &[(1, 1, 1)]), ("y", &[(2, 2, 1)]), ("z", &[(2, 3, 1)])],
        relations: &["x_1x_2", "x_1y", "x_1z", "x_2y", "x_2z", "y^3-z^2"],
        partition: &[0, 0, 0],
        codim: (3, 3),
    },
    CaseData {
        case: C::T3_3b,
        delta: 3,
        branches: 3,
        name: "tacnode with extra smooth branch",
        highlighted: &[(&[1, 1, 1], 2), (&[1, 2, 2], 3)],
        semigroup: &[
            &[Some(1), INF, INF],
            &[INF, Some(2), INF],
            &[INF, Some(3), INF],
            &[INF, INF, Some(2)],
            &[INF, INF, Some(3)],
            &[Some(1), Some(1), Some(1)],
        ],
        symmetric: false,
        generators: &[("x", &[(0, 1, 1)]), ("y", &[(1, 2, 1)]), ("z", &[(1, 1, 1), (2, 1, 1)])],
        relations: &["xy", "xz", "y(z^2-y)"],
        partition: &[0, 0, 1],
        codim: (3, 4),
    },
    CaseData {
        case: C::T3_3c,
        delta: 3,
        branches: 3,
        name: "planar triple point",
        highlighted: &[(&[1, 1, 1], 2), (&[2, 2, 2], 3)],
        semigroup: &[&[Some(2), INF, INF], &[Some(3), INF, INF], &[Some(1), Some(1), Some(2)]],
        symmetric: true,
        generators: &[("x", &[(0, 1, 1), (1, 1, 1)]), ("y", &[(0, 1, 1), (2, 1, 1)])],
        relations: &["xy(x-y)"],
        partition: &[0, 0, 2],
        codim: (3, 5),
    },
    CaseData {
        case: C::T3_4,
        delta: 3,
        branches: 4,
        name: "ordinary quadruple point",
        highlighted: &[(&[1, 1, 1, 1], 3)],
        semigroup: &[
            &[Some(1), INF, INF, INF],
            &[INF, Some(1), INF, INF],
            &[INF, INF, Some(1), INF],
            &[INF, INF, INF, Some(1)],
        ],
        symmetric: false,
        generators: &[("x", &[(0, 1, 1)]), ("y", &[(1, 1, 1)]), ("z", &[(2, 1, 1)]), ("w", &[(3, 1, 1)])],
        relations: &["xy", "xz", "xw", "yz", "yw", "zw"],
        partition: &[0, 0, 0],
        codim: (3, 4),
    },
];

pub(crate) struct VsRow {
    pub result: SingularityType,
    pub branches: usize,
    pub conditions: &'static [(&'static [usize], usize)],
}

const fn row(result: SingularityType, branches: usize, conditions: &'static [(&'static [usize], usize)]) -> VsRow {
    VsRow { result, branches, conditions }
}

use SingularityType::{Ambiguous as Amb, Case as T};

/// Conditions on the gap function of a linear system, checked in order.
/// Larger `δ` comes first: a space of type 3.1.c also satisfies the 2.1.a
/// row, so the first matching row wins.
pub(crate) static VS_ROWS: [VsRow; 19] = [
    row(T(C::T3_1a), 1, &[(&[4], 3)]),
    row(T(C::T3_1b), 1, &[(&[3], 2), (&[4], 2), (&[5], 3)]),
    row(T(C::T3_1c), 1, &[(&[3], 2), (&[5], 2), (&[6], 3)]),
    row(T(C::T3_2a), 2, &[(&[3, 1], 3)]),
    row(T(C::T3_2b), 2, &[(&[2, 1], 2), (&[3, 2], 2), (&[4, 1], 3)]),
    row(T(C::T3_2c), 2, &[(&[2, 2], 3)]),
    row(T(C::T3_2d), 2, &[(&[2, 1], 2), (&[2, 2], 2), (&[3, 1], 2), (&[3, 2], 3)]),
    row(T(C::T3_2e), 2, &[(&[2, 1], 2), (&[3, 2], 2), (&[4, 1], 2), (&[4, 2], 3)]),
    row(T(C::T3_3a), 3, &[(&[1, 1, 2], 3)]),
    row(T(C::T3_3b), 3, &[(&[1, 1, 1], 2), (&[1, 1, 2], 2), (&[1, 2, 1], 2), (&[2, 1, 1], 2), (&[1, 2, 2], 3)]),
    row(T(C::T3_3c), 3, &[(&[1, 1, 1], 2), (&[1, 2, 2], 2), (&[2, 1, 2], 2), (&[2, 2, 1], 2), (&[2, 2, 2], 3)]),
    row(T(C::T3_4), 4, &[(&[1, 1, 1, 1], 3)]),
    row(T(C::T2_1a), 1, &[(&[3], 2), (&[5], 2)]),
    row(Amb(AmbiguousPair::RhamphoidOr27Cusp), 1, &[(&[2], 1), (&[3], 1), (&[4], 2)]),
    row(Amb(AmbiguousPair::TacnodeOrThirdOrderNode), 2, &[(&[1, 1], 1), (&[1, 2], 1), (&[2, 1], 1), (&[2, 2], 2)]),
    row(T(C::T2_2b), 2, &[(&[2, 1], 2), (&[4, 2], 2)]),
    row(T(C::T2_3), 3, &[(&[1, 1, 1], 2), (&[2, 2, 2], 2)]),
    row(T(C::T1_1), 1, &[(&[2], 1), (&[4], 1)]),
    row(T(C::T1_2), 2, &[(&[1, 1], 1), (&[2, 2], 1)]),
];
