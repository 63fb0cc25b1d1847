//! Reference data for verification: level sizes of several Weyl groups, the
//! W(D4) class table and order partition, and the D4 level-2 file.

/// Level sizes of one group, full length (levels `0..=N`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReferenceTable {
    pub root_system: &'static str,
    pub level_sizes: Vec<usize>,
    pub total: u64,
}

const D4_LEVELS: &[usize] = &[1, 4, 9, 16, 23, 28, 30, 28, 23, 16, 9, 4, 1];

// Lower halves (levels 0..=N/2); the upper half mirrors them. The tests
// check every table against the Poincare polynomial coefficients.

const B7_HALF: &[usize] = &[
    1, 7, 27, 77, 181, 371, 686, 1170, 1869, 2827, 4082, 5662, 7581, 9835, 12399, 15225, 18242,
    21358, 24464, 27440, 30162, 32510, 34376, 35672, 36336,
];

const D8_HALF: &[usize] = &[
    1, 8, 35, 112, 293, 664, 1350, 2520, 4388, 7208, 11263, 16848, 24248, 33712, 45425, 59480,
    75853, 94384, 114766, 136544, 159125, 181800, 203777, 224224, 242318, 257296, 268504, 275440,
    277788,
];

const E7_HALF: &[usize] = &[
    1, 7, 27, 77, 182, 378, 713, 1247, 2051, 3205, 4795, 6909, 9632, 13040, 17194, 22134, 27874,
    34398, 41657, 49567, 58009, 66831, 75852, 84868, 93659, 101997, 109655, 116417, 122087, 126497,
    129514, 131046,
];

const B8_HALF: &[usize] = &[
    1, 8, 35, 112, 293, 664, 1350, 2520, 4389, 7216, 11298, 16960, 24541, 34376, 46775, 62000,
    80241, 101592, 126029, 153392, 183373, 215512, 249202, 283704, 318171, 351680, 383270, 411984,
    436913, 457240, 472281, 481520, 484636,
];

fn mirrored(half: &[usize], top: usize) -> Vec<usize> {
    (0..=top).map(|k| half[k.min(top - k)]).collect()
}

pub fn reference_table(root_system: &str) -> Option<ReferenceTable> {
    let (name, sizes) = match root_system {
        "D4" => ("D4", D4_LEVELS.to_vec()),
        "B7" => ("B7", mirrored(B7_HALF, 49)),
        "D8" => ("D8", mirrored(D8_HALF, 56)),
        "E7" => ("E7", mirrored(E7_HALF, 63)),
        "B8" => ("B8", mirrored(B8_HALF, 64)),
        _ => return None,
    };
    let total = sizes.iter().map(|&s| s as u64).sum();
    Some(ReferenceTable {
        root_system: name,
        level_sizes: sizes,
        total,
    })
}

/// One row of the W(D4) conjugacy class table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct D4ClassRow {
    pub row: usize,
    pub representative: &'static str,
    pub size: usize,
    pub root_subset: &'static str,
    pub order: u64,
    /// Signed cycle lengths, negative for negative cycles.
    pub cycle_type: &'static [i64],
}

pub const D4_CLASS_ROWS: [D4ClassRow; 13] = [
    row(0, "e", 1, "∅", 1, &[1, 1, 1, 1]),
    row(1, "s1", 12, "A_1", 2, &[2, 1, 1]),
    row(2, "s1s2", 32, "A_2", 3, &[3, 1]),
    row(3, "s1s3", 6, "2A_1", 2, &[2, 2]),
    row(4, "s1s4", 6, "2A_1", 2, &[2, 2]),
    row(5, "s3s4", 6, "D_2", 2, &[-1, -1, 1, 1]),
    row(6, "s1s2s3", 24, "A_3", 4, &[4]),
    row(7, "s1s2s4", 24, "A_3", 4, &[4]),
    row(8, "s1s3s4", 12, "3A_1", 2, &[2, -1, -1]),
    row(9, "s3s2s4", 24, "D_3", 4, &[-2, -1, 1]),
    row(10, "s1s4s2s3", 32, "D_4", 6, &[-3, -1]),
    row(11, "s3s2s4s3s2s1", 12, "D_4(a_1)", 4, &[-2, -2]),
    row(
        12,
        "s1s2s3s4s2s1s2s3s4s2s3s4",
        1,
        "4A_1",
        2,
        &[-1, -1, -1, -1],
    ),
];

const fn row(
    row: usize,
    representative: &'static str,
    size: usize,
    root_subset: &'static str,
    order: u64,
    cycle_type: &'static [i64],
) -> D4ClassRow {
    D4ClassRow {
        row,
        representative,
        size,
        root_subset,
        order,
        cycle_type,
    }
}

/// Element counts of W(D4) by order.
pub const D4_ORDER_PARTITION: [(u64, u64); 5] = [(1, 1), (2, 43), (3, 32), (4, 84), (6, 32)];

/// Expected content of `D4_WeightMatrByLevel_2_elems=9.txt`.
pub const D4_LEVEL2_GOLDEN: &str = include_str!("../data/D4_WeightMatrByLevel_2_elems=9.txt");
