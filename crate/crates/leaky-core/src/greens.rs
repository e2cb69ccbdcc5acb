//! Free Green's functions at negative energy and the special functions they
//! are built from.
//!
//! Everything here lives on the negative spectral half-line E = −κ², κ > 0,
//! where the free resolvent kernels are real and positive:
//!
//! * 2D: G_iκ(x−y) = (1/2π)·K₀(κ|x−y|), with K₀ the Macdonald function,
//! * 3D: G_iκ(x−y) = e^{−κ|x−y|} / (4π|x−y|).
//!
//! The module also provides the regularized diagonal values ξ_d entering
//! point-interaction Krein matrices,
//!
//! * ξ₂(κ) = −(1/2π)(ln(κ/2) − ψ(1)),
//! * ξ₃(κ) = −κ/4π,
//!
//! and the closed-form single-point 2D bound state ζ_α = −4e^{2(−2πα+ψ(1))},
//! which doubles as the essential-spectrum threshold of a straight
//! codimension-2 wire.
//!
//! K₀ and K₁ are evaluated by the ascending series for x ≤ 2 and by Steed's
//! continued fraction (Thompson–Barnett CF2) for x > 2; I₀ and I₁ use the
//! Cephes-lineage Chebyshev fits. Relative accuracy is ~1e−14 throughout,
//! well inside the 1e−12 budget that every downstream matrix entry inherits.

/// Euler–Mascheroni constant γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Digamma at 1: ψ(1) = −γ. Kept as a named constant because the
/// point-interaction literature writes thresholds in terms of ψ(1).
pub const PSI_1: f64 = -EULER_GAMMA;

/// Ambient dimension for point-interaction formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    Two,
    Three,
}

// ---------------------------------------------------------------------------
// Chebyshev fits for I₀, I₁ (Cephes lineage)
// ---------------------------------------------------------------------------

/// Chebyshev series for I₀(x)·e^{−x} on [0, 8], argument mapped to x/2 − 2.
const I0_CHEB_A: [f64; 30] = [
    -4.415_341_646_479_339_5E-18,
    3.330_794_518_822_238_4E-17,
    -2.431_279_846_547_955E-16,
    1.715_391_285_555_133E-15,
    -1.168_533_287_799_345_1E-14,
    7.676_185_498_604_936E-14,
    -4.856_446_783_111_929E-13,
    2.955_052_663_129_64E-12,
    -1.726_826_291_441_556E-11,
    9.675_809_035_373_237E-11,
    -5.189_795_601_635_263E-10,
    2.659_823_724_682_386_6E-9,
    -1.300_025_009_986_248E-8,
    6.046_995_022_541_919E-8,
    -2.670_793_853_940_612E-7,
    1.117_387_539_120_103_7E-6,
    -4.416_738_358_458_750_5E-6,
    1.644_844_807_072_889_6E-5,
    -5.754_195_010_082_104E-5,
    1.885_028_850_958_416_5E-4,
    -5.763_755_745_385_824E-4,
    1.639_475_616_941_335_7E-3,
    -4.324_309_995_050_576E-3,
    1.054_646_039_459_499_8E-2,
    -2.373_741_480_589_947E-2,
    4.930_528_423_967_071E-2,
    -9.490_109_704_804_764E-2,
    1.716_209_015_222_087_7E-1,
    -3.046_826_723_431_984E-1,
    6.767_952_744_094_761E-1,
];

/// Chebyshev series for I₀(x)·e^{−x}·√x on [8, ∞), argument 32/x − 2.
const I0_CHEB_B: [f64; 25] = [
    -7.233_180_487_874_754E-18,
    -4.830_504_485_944_182E-18,
    4.465_621_420_296_76E-17,
    3.461_222_867_697_461E-17,
    -2.827_623_980_516_583_6E-16,
    -3.425_485_619_677_219E-16,
    1.772_560_133_056_526_3E-15,
    3.811_680_669_352_622_4E-15,
    -9.554_846_698_828_307E-15,
    -4.150_569_347_287_222E-14,
    1.540_086_217_521_41E-14,
    3.852_778_382_742_142_6E-13,
    7.180_124_451_383_666E-13,
    -1.794_178_531_506_806_2E-12,
    -1.321_581_184_044_771_3E-11,
    -3.149_916_527_963_241_6E-11,
    1.188_914_710_784_643_9E-11,
    4.940_602_388_224_97E-10,
    3.396_232_025_708_386_5E-9,
    2.266_668_990_498_178E-8,
    2.048_918_589_469_063_8E-7,
    2.891_370_520_834_756_7E-6,
    6.889_758_346_916_825E-5,
    3.369_116_478_255_694_3E-3,
    8.044_904_110_141_088E-1,
];

/// Chebyshev series for I₁(x)/x·e^{−x} on [0, 8], argument x/2 − 2.
const I1_CHEB_A: [f64; 29] = [
    2.777_914_112_761_046_4E-18,
    -2.111_421_214_358_166E-17,
    1.553_631_957_736_200_5E-16,
    -1.105_596_947_735_386_2E-15,
    7.600_684_294_735_408E-15,
    -5.042_185_504_727_912E-14,
    3.223_793_365_945_575E-13,
    -1.983_974_397_764_943_6E-12,
    1.173_618_629_889_090_1E-11,
    -6.663_489_723_502_027E-11,
    3.625_590_281_552_117E-10,
    -1.887_249_751_722_829_4E-9,
    9.381_537_386_495_773E-9,
    -4.445_059_128_796_328E-8,
    2.003_294_753_552_135_3E-7,
    -8.568_720_264_695_455E-7,
    3.470_251_308_137_678_5E-6,
    -1.327_316_365_603_943_6E-5,
    4.781_565_107_550_054E-5,
    -1.617_608_158_258_967_4E-4,
    5.122_859_561_685_758E-4,
    -1.513_572_450_631_253_2E-3,
    4.156_422_944_312_888E-3,
    -1.056_408_489_462_619_7E-2,
    2.472_644_903_062_651_6E-2,
    -5.294_598_120_809_499E-2,
    1.026_436_586_898_471E-1,
    -1.764_165_183_578_340_6E-1,
    2.525_871_864_436_336_5E-1,
];

/// Chebyshev series for I₁(x)·e^{−x}·√x on [8, ∞), argument 32/x − 2.
const I1_CHEB_B: [f64; 25] = [
    7.517_296_310_842_104_8E-18,
    4.414_348_323_071_707_9E-18,
    -4.650_305_368_489_358_3E-17,
    -3.209_525_921_993_424E-17,
    2.962_628_997_645_950_1E-16,
    3.308_202_310_920_928_3E-16,
    -1.880_354_775_510_782_4E-15,
    -3.814_403_072_437_007_8E-15,
    1.042_027_698_412_880_3E-14,
    4.272_440_016_711_951_4E-14,
    -2.101_541_842_772_664_3E-14,
    -4.083_551_111_092_197_3E-13,
    -7.198_551_776_245_908_5E-13,
    2.035_628_544_147_089_5E-12,
    1.412_580_743_661_378_1E-11,
    3.252_603_583_015_488_2E-11,
    -1.897_495_812_350_541_2E-11,
    -5.589_743_462_196_584E-10,
    -3.835_380_385_964_237E-9,
    -2.631_468_846_889_519_5E-8,
    -2.512_236_237_870_208_9E-7,
    -3.882_564_808_877_690_4E-6,
    -1.105_889_387_626_237_2E-4,
    -9.761_097_491_361_468_4E-3,
    7.785_762_350_182_801_2E-1,
];

/// Evaluate a Chebyshev series by Clenshaw recurrence (Cephes `chbevl`).
fn chbevl(x: f64, coeffs: &[f64]) -> f64 {
    let mut b0 = coeffs[0];
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    for c in &coeffs[1..] {
        b2 = b1;
        b1 = b0;
        b0 = x.mul_add(b1, *c) - b2;
    }
    0.5 * (b0 - b2)
}

/// Modified Bessel function I₀(x).
pub fn i0(x: f64) -> f64 {
    let ax = x.abs();
    if ax <= 8.0 {
        ax.exp() * chbevl(ax.mul_add(0.5, -2.0), &I0_CHEB_A)
    } else {
        ax.exp() * chbevl(32.0_f64.mul_add(ax.recip(), -2.0), &I0_CHEB_B) / ax.sqrt()
    }
}

/// Modified Bessel function I₁(x).
pub fn i1(x: f64) -> f64 {
    let ax = x.abs();
    let r = if ax <= 8.0 {
        chbevl(ax.mul_add(0.5, -2.0), &I1_CHEB_A) * ax * ax.exp()
    } else {
        ax.exp() * chbevl(32.0_f64.mul_add(ax.recip(), -2.0), &I1_CHEB_B) / ax.sqrt()
    };
    r * x.signum()
}

// ---------------------------------------------------------------------------
// Macdonald functions K₀, K₁
// ---------------------------------------------------------------------------

/// Σ_{k≥0} ψ(k+1)·(z²/4)^k/(k!)², the companion series of the ascending
/// expansion K₀(z) = −ln(z/2)·I₀(z) + sg(z).
///
/// Exposed to the quadrature layer: the Nyström product-integration split
/// needs exactly this smooth remainder after the logarithm is peeled off.
pub(crate) fn k0_log_companion(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut psi = -EULER_GAMMA; // ψ(1)
    let mut term = 1.0; // (z²/4)^k / (k!)² at k = 0
    let mut sum = psi * term;
    for k in 1..200 {
        let kf = k as f64;
        psi += 1.0 / kf;
        term *= q / (kf * kf);
        let add = psi * term;
        sum += add;
        if add.abs() <= 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

/// Companion series for K₁: K₁(z) = ln(z/2)·I₁(z) + 1/z − (z/4)·Σ_{k≥0}
/// [ψ(k+1)+ψ(k+2)]·(z²/4)^k / (k!(k+1)!).
fn k1_series_sum(z: f64) -> f64 {
    let q = 0.25 * z * z;
    let mut psi_k = -EULER_GAMMA; // ψ(k+1) at k = 0
    let mut psi_k1 = 1.0 - EULER_GAMMA; // ψ(k+2) at k = 0
    let mut term = 1.0; // (z²/4)^k / (k!(k+1)!) at k = 0
    let mut sum = psi_k + psi_k1;
    for k in 1..200 {
        let kf = k as f64;
        psi_k += 1.0 / kf;
        psi_k1 += 1.0 / (kf + 1.0);
        term *= q / (kf * (kf + 1.0));
        let add = (psi_k + psi_k1) * term;
        sum += add;
        if add.abs() <= 1e-17 * sum.abs().max(1.0) {
            break;
        }
    }
    sum
}

/// Steed's continued fraction CF2 (Thompson–Barnett) at order 0: returns
/// (K₀(x), K₁(x)) for x > 1 with full double accuracy.
fn k0_k1_cf2(x: f64) -> (f64, f64) {
    let mut a = -0.25;
    let mut b = 2.0 * (x + 1.0);
    let mut d = 1.0 / b;
    let mut delta = d;
    let mut f = d;
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut q: f64 = 0.25;
    let mut c: f64 = 0.25;
    let mut s = q.mul_add(delta, 1.0);
    for k in 2..500 {
        let kf = k as f64;
        a -= 2.0 * (kf - 1.0);
        b += 2.0;
        d = a.mul_add(d, b).recip();
        delta *= b.mul_add(d, -1.0);
        f += delta;
        let t = (b - 2.0).mul_add(-cur, prev) / a;
        prev = cur;
        cur = t;
        c *= -a / kf;
        q += c * t;
        s += q * delta;
        if (q * delta).abs() < s.abs() * f64::EPSILON / 2.0 {
            let k0 = (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp() / s;
            let k1 = k0 * (x + 0.5 - 0.25 * f) / x;
            return (k0, k1);
        }
    }
    unreachable!("CF2 for K0/K1 did not converge at x = {x}");
}

/// Macdonald function K₀(x): the 2D negative-energy kernel profile.
/// Strictly decreasing and strictly convex on (0, ∞).
///
/// # Panics
/// On x ≤ 0 (K₀ has a branch point at 0 and the physics lives at x > 0).
pub fn k0(x: f64) -> f64 {
    assert!(x > 0.0, "k0: argument must be positive, got {x}");
    if x <= 2.0 {
        -(0.5 * x).ln() * i0(x) + k0_log_companion(x)
    } else {
        k0_k1_cf2(x).0
    }
}

/// Macdonald function K₁(x) = −K₀′(x); used for closed-form L²(ℝ²) overlaps
/// of 2D Green's functions.
///
/// # Panics
/// On x ≤ 0.
pub fn k1(x: f64) -> f64 {
    assert!(x > 0.0, "k1: argument must be positive, got {x}");
    if x <= 2.0 {
        (0.5 * x).ln() * i1(x) + 1.0 / x - 0.25 * x * k1_series_sum(x)
    } else {
        k0_k1_cf2(x).1
    }
}

// ---------------------------------------------------------------------------
// Green's functions and point-interaction thresholds
// ---------------------------------------------------------------------------

/// 2D free Green's function at energy −κ²: (1/2π)·K₀(κr).
///
/// # Panics
/// On κ ≤ 0 or r ≤ 0.
pub fn green2(kappa: f64, r: f64) -> f64 {
    assert!(kappa > 0.0, "green2: kappa must be positive, got {kappa}");
    assert!(r > 0.0, "green2: r must be positive, got {r}");
    k0(kappa * r) / (2.0 * std::f64::consts::PI)
}

/// 3D free Green's function at energy −κ²: e^{−κr}/(4πr).
///
/// # Panics
/// On κ ≤ 0 or r ≤ 0.
pub fn green3(kappa: f64, r: f64) -> f64 {
    assert!(kappa > 0.0, "green3: kappa must be positive, got {kappa}");
    assert!(r > 0.0, "green3: r must be positive, got {r}");
    (-kappa * r).exp() / (4.0 * std::f64::consts::PI * r)
}

/// Regularized diagonal Green's value ξ_d(κ) in the Krein matrix:
/// ξ₂ = −(1/2π)(ln(κ/2) − ψ(1)), ξ₃ = −κ/4π.
///
/// Strictly decreasing in κ in both dimensions, which is what makes the
/// Krein diagonal α − ξ_d strictly increasing and bisection in κ safe.
///
/// # Panics
/// On κ ≤ 0.
pub fn xi(dim: Dim, kappa: f64) -> f64 {
    assert!(kappa > 0.0, "xi: kappa must be positive, got {kappa}");
    match dim {
        Dim::Two => -((0.5 * kappa).ln() - PSI_1) / (2.0 * std::f64::consts::PI),
        Dim::Three => -kappa / (4.0 * std::f64::consts::PI),
    }
}

/// Single 2D point-interaction energy ζ_α = −4e^{2(−2πα+ψ(1))}: the unique
/// solution of α = ξ₂(κ) reported as −κ². Also the bottom of the essential
/// spectrum for a straight codimension-2 wire of that coupling.
pub fn zeta_threshold(alpha: f64) -> f64 {
    -4.0 * (2.0 * (-2.0 * std::f64::consts::PI * alpha + PSI_1)).exp()
}

/// Closed-form overlap ∫_{ℝ²} G_κ(x−a)·G_κ(x−b) dx with r = |a−b|:
/// r·K₁(κr)/(4πκ) for r > 0, continuous limit 1/(4πκ²) at r = 0.
///
/// Lets eigenfunctions of the form ψ = Σ c_j G_κ(·−y_j) be L²-normalized
/// without any 2D quadrature.
pub fn resolvent_overlap2(kappa: f64, r: f64) -> f64 {
    assert!(kappa > 0.0, "resolvent_overlap2: kappa must be positive");
    let pi = std::f64::consts::PI;
    // Below κr ≈ 1e−8 the closed form r·K₁(κr) = 1/κ − O(r²ln r) has fully
    // converged to its limit in double precision.
    if kappa * r < 1e-8 {
        1.0 / (4.0 * pi * kappa * kappa)
    } else {
        r * k1(kappa * r) / (4.0 * pi * kappa)
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
