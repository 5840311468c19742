#![allow(clippy::excessive_precision)]

use std::f64::consts::FRAC_PI_4;

// atan(0.5), atan(1) split into high and low parts.
const ATAN_HI: [f64; 2] = [4.636_476_090_008_060_935_15e-1, FRAC_PI_4];
const ATAN_LO: [f64; 2] = [2.269_877_745_296_168_709_24e-17, 3.061_616_997_868_383_017_93e-17];
const AT: [f64; 11] = [
    3.333_333_333_333_293_180_27e-1,
    -1.999_999_999_987_648_324_76e-1,
    1.428_571_427_250_346_637_11e-1,
    -1.111_111_040_546_235_578_80e-1,
    9.090_887_133_436_506_561_96e-2,
    -7.691_876_205_044_829_994_95e-2,
    6.661_073_137_387_531_206_69e-2,
    -5.833_570_133_790_573_486_45e-2,
    4.976_877_994_615_932_360_17e-2,
    -3.653_157_274_421_691_552_70e-2,
    1.628_582_011_536_578_236_23e-2,
];

/// Arctangent for arguments in `[-1, 1]`, the only range a difference of two
/// normalized values can take. Uses the classic fdlibm reduction and
/// polynomial, written with selects instead of branches so slices of angles
/// vectorize. Agrees with `f64::atan` to within one ulp and is exactly odd.
#[inline(always)]
pub fn unit_atan(x: f64) -> f64 {
    let a = x.abs().min(1.0);
    let mid = a >= 0.4375;
    let high = a >= 0.6875;
    let num = if high { a - 1.0 } else if mid { 2.0 * a - 1.0 } else { a };
    let den = if high { a + 1.0 } else if mid { 2.0 + a } else { 1.0 };
    let t = num / den;
    let hi = if high { ATAN_HI[1] } else if mid { ATAN_HI[0] } else { 0.0 };
    let lo = if high { ATAN_LO[1] } else if mid { ATAN_LO[0] } else { 0.0 };
    let z = t * t;
    let w = z * z;
    let s1 = z * (AT[0] + w * (AT[2] + w * (AT[4] + w * (AT[6] + w * (AT[8] + w * AT[10])))));
    let s2 = w * (AT[1] + w * (AT[3] + w * (AT[5] + w * (AT[7] + w * AT[9]))));
    let r = if mid { hi - ((t * (s1 + s2) - lo) - t) } else { t - t * (s1 + s2) };
    r.copysign(x)
}

/// Angle of the segment joining two normalized values on adjacent axes one
/// unit apart. Lies in `[-pi/4, pi/4]`.
#[inline]
pub fn segment_angle(v_left: f64, v_right: f64) -> f64 {
    unit_atan(v_right - v_left)
}

/// Largest magnitude a segment angle can take.
pub const MAX_ANGLE: f64 = FRAC_PI_4;

/// Largest population variance a set of segment angles can take.
pub const MAX_ANGLE_VARIANCE: f64 = FRAC_PI_4 * FRAC_PI_4;
