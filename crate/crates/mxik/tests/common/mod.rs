//! Printed values for the planar arm at (30 deg, 30 deg, -0.7 m), per unit m, dm, cm, mm.
#![allow(dead_code)]

pub const JACOBIAN: [[[f64; 3]; 2]; 4] = [
    [[-1.8026, -1.3026, 0.866], [0.8098, -0.0562, -0.500]],
    [[-18.026, -13.026, 0.866], [8.098, -0.562, -0.500]],
    [[-180.26, -130.26, 0.866], [80.98, -5.62, -0.500]],
    [[-1802.6, -1302.6, 0.866], [809.8, -56.2, -0.500]],
];

pub const MP: [[[f64; 2]; 3]; 4] = [
    [[-0.08838467, 0.71399628], [-0.68903295, -1.44117808], [-0.06567735, -0.68156105]],
    [[-0.00491752, 0.11208890], [-0.07002356, -0.15574331], [-0.00091353, -0.00948012]],
    [[-0.00048627, 0.01126570], [-0.00700392, -0.01559056], [-0.00000917, -0.00009517]],
    [[-0.00004862, 0.00112662], [-0.00070039, -0.00155907], [-0.00000009, -0.00000095]],
];

pub const UC: [[[f64; 2]; 3]; 4] = [
    [[-0.02734497, 0.49301544], [-0.70647286, -1.37804070], [0.03514430, -1.04656388]],
    [[-0.00273449, 0.04930154], [-0.07064728, -0.13780407], [0.03514434, -1.04656388]],
    [[-0.00027344, 0.00493015], [-0.00706472, -0.01378040], [0.03514434, -1.04656388]],
    [[-0.00002734, 0.00049301], [-0.00070647, -0.00137804], [0.03514434, -1.04656388]],
];
