//! Adaptive Gauss–Kronrod (7, 15) quadrature for complex integrands.

use crate::C64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
/// Gauss weights at `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One 15-point Kronrod estimate on `[a, b]` with the embedded 7-point
/// Gauss error estimate.
fn gk15<E>(f: &impl Fn(f64) -> Result<C64, E>, a: f64, b: f64) -> Result<(C64, f64), E> {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(mid - dx)? + f(mid + dx)?;
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    Ok((kron * half, ((kron - gauss) * half).norm()))
}

/// Integral of `f` over `[a, b]` to absolute tolerance `tol`, bisecting up
/// to `max_depth` times. Returns the value and the summed error estimate.
pub fn integrate<E>(
    f: &impl Fn(f64) -> Result<C64, E>,
    a: f64,
    b: f64,
    tol: f64,
    max_depth: u32,
) -> Result<(C64, f64), E> {
    let (v, e) = gk15(f, a, b)?;
    if e <= tol || max_depth == 0 {
        return Ok((v, e));
    }
    let m = 0.5 * (a + b);
    let (v1, e1) = integrate(f, a, m, 0.5 * tol, max_depth - 1)?;
    let (v2, e2) = integrate(f, m, b, 0.5 * tol, max_depth - 1)?;
    Ok((v1 + v2, e1 + e2))
}
