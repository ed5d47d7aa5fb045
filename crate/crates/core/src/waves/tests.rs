use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::{c, real, Biquaternion, CVec3, Complex, I};
use crate::diffops::{kgfsh_apply, BqField, FnField, FnSpatialField, Partials, Sign, SpatialField};
use crate::quadrature::{gauss_legendre_interval, QuadratureSpec};
use crate::{Error, SpacetimePoint};

fn quad() -> QuadratureSpec {
    QuadratureSpec::new(64, 16)
}

fn test_functions() -> [Bump; 3] {
    [
        Bump::new(0.1, [0.0; 3], 1.0, 1.0, 1.0).unwrap(),
        Bump::new(-0.2, [0.1, 0.0, 0.05], 0.8, 1.2, 2.0).unwrap(),
        Bump::new(0.0, [0.0, 0.2, 0.0], 1.5, 0.9, 0.5).unwrap(),
    ]
}

fn origin_value(phi: &Bump) -> f64 {
    phi.value(&SpacetimePoint::ORIGIN)
}

#[test]
fn radial_pairing_matches_radial_reduction() {
    let phi = Bump::new(0.5, [0.0; 3], 0.6, 1.0, 1.0).unwrap();
    let three_d = pair_wave_fundamental(&phi, &quad()).unwrap();
    // ∫ φ(r, r)/(4πr)·4πr² dr
    let mut radial = 0.0;
    for i in 0..50 {
        let (a, b) = (i as f64 * 0.022, (i + 1) as f64 * 0.022);
        for (r, w) in gauss_legendre_interval(16, a, b) {
            radial += w * r * phi.value(&SpacetimePoint::new(r, [r, 0.0, 0.0]));
        }
    }
    assert!((three_d.re - radial).abs() < 1e-6 && three_d.im == 0.0, "{three_d} vs {radial}");
}

#[test]
fn pairing_vanishes_off_the_cone() {
    let phi = Bump::new(3.0, [0.0; 3], 0.5, 0.5, 1.0).unwrap();
    assert_eq!(pair_wave_fundamental(&phi, &quad()).unwrap(), c(0.0, 0.0));
    assert_eq!(fundamental_biwave(Sign::Plus, &phi, &quad()).unwrap(), Biquaternion::ZERO);
    // Advanced layer against a function supported in τ > 0.
    let adv = ConeLayerKernel::oscillating(0.7).with_weight(c(0.0, 0.0));
    let later = Bump::new(1.0, [0.2, 0.0, 0.0], 0.5, 1.0, 1.0).unwrap();
    assert_eq!(kgfsh_fundamental_pair(&adv, &later, &quad()).unwrap(), c(0.0, 0.0));
}

#[test]
fn wave_kernel_is_fundamental_solution() {
    for phi in test_functions() {
        let got = wave_distributional_pair(&phi, &quad()).unwrap();
        let want = origin_value(&phi);
        assert!((got - want).norm() < 1e-3 * want.abs(), "{got} vs {want}");
    }
}

#[test]
fn kgfsh_kernels_are_fundamental_solutions() {
    let kernels = [
        ConeLayerKernel::oscillating(1.3),
        ConeLayerKernel::kgfsh(c(0.4, -0.8)),
        ConeLayerKernel::oscillating(0.9).with_weight(c(0.3, 0.2)),
        ConeLayerKernel::kgfsh(c(-0.5, 0.0)).with_weight(c(0.0, 0.0)),
    ];
    for kernel in kernels {
        for phi in test_functions() {
            let got = kgfsh_distributional_pair(&kernel, &phi, &quad()).unwrap();
            let want = origin_value(&phi);
            assert!((got - want).norm() < 1e-3 * want.abs(), "{kernel:?}: {got} vs {want}");
        }
    }
}

#[test]
fn zero_mass_kgfsh_is_wave_pairing() {
    let phi = test_functions()[1];
    let a = kgfsh_fundamental_pair(&ConeLayerKernel::oscillating(0.0), &phi, &quad()).unwrap();
    let b = pair_wave_fundamental(&phi, &quad()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn biwave_fundamental_solution() {
    for sign in [Sign::Plus, Sign::Minus] {
        for phi in test_functions() {
            let got = fundamental_biwave_check(sign, &phi, &quad()).unwrap();
            let want = Biquaternion::real(origin_value(&phi));
            assert!(got.distance(&want) < 1e-3 * want.norm(), "{got} vs {want}");
        }
        let phi = test_functions()[0];
        let psi = fundamental_biwave(sign, &phi, &quad()).unwrap();
        let dt = pair_cone(&ConeLayerKernel::wave(), &|p| c(-phi.gradient(p)[0], 0.0), &phi.support(), &quad()).unwrap();
        assert!((psi.scalar - dt).norm() < 1e-14);
    }
}

#[test]
fn pairings_are_linear() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let [f, g, _] = test_functions();
    let kernel = ConeLayerKernel::oscillating(0.6);
    let kernel2 = ConeLayerKernel::kgfsh(c(0.2, 0.0));
    for _ in 0..5 {
        let (a, b) = (rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let support = crate::diffops::Support { tau: (-1.5, 1.5), center: [0.0; 3], radius: 1.4 };
        let combo = pair_cone(&kernel, &|p| c(a * f.value(p) + b * g.value(p), 0.0), &support, &quad()).unwrap();
        let sep = pair_cone(&kernel, &|p| c(f.value(p), 0.0), &support, &quad()).unwrap() * a
            + pair_cone(&kernel, &|p| c(g.value(p), 0.0), &support, &quad()).unwrap() * b;
        assert!((combo - sep).norm() < 1e-10);
        // Linear in the kernel density for a fixed cone branch.
        let d1 = |p: &SpacetimePoint| c(f.value(p), 0.0);
        let mix = pair_cone(&kernel, &d1, &support, &quad()).unwrap() * a
            + pair_cone(&kernel2, &d1, &support, &quad()).unwrap() * b;
        let direct = pair_cone_many(
            &ConeLayerKernel::wave(),
            1,
            &|p, out| {
                let r = p.tau;
                let w = (-kernel.mass * r).exp() * a + (-kernel2.mass * r).exp() * b;
                out[0] = w * f.value(p);
            },
            &support,
            &quad(),
        )
        .unwrap()[0];
        assert!((mix - direct).norm() < 1e-10);
    }
}

#[test]
fn retarded_constant_source() {
    let k = Biquaternion::from_components([c(1.0, 2.0), c(0.0, -1.0), c(0.5, 0.0), c(0.0, 0.0)]);
    let f = FnField::new(move |_| k);
    for tau in [0.3, 1.0, 2.5] {
        let p = SpacetimePoint::new(tau, [0.1, 0.2, 0.3]);
        let got = retarded_convolve(&ConeLayerKernel::wave(), &f, &p, &QuadratureSpec::new(64, 4)).unwrap();
        assert!(got.distance(&(k * (tau * tau / 2.0))) < 1e-8);
    }
    let z = retarded_convolve(&ConeLayerKernel::wave(), &crate::diffops::ZeroField, &SpacetimePoint::new(1.0, [0.0; 3]), &quad()).unwrap();
    assert_eq!(z, Biquaternion::ZERO);
}

#[test]
fn retarded_rejects_bad_inputs() {
    let p0 = SpacetimePoint::new(0.0, [0.0; 3]);
    let f = crate::diffops::ZeroField;
    assert_eq!(retarded_convolve(&ConeLayerKernel::wave(), &f, &p0, &quad()), Err(Error::NegativeTime(0.0)));
    let adv = ConeLayerKernel::wave().with_weight(c(0.5, 0.0));
    let p = SpacetimePoint::new(1.0, [0.0; 3]);
    assert!(matches!(retarded_convolve(&adv, &f, &p, &quad()), Err(Error::UnsupportedBranch { .. })));
}

#[test]
fn retarded_mollified_delta_matches_pairing() {
    let bump = Bump::normalized(0.3, [0.1, 0.0, -0.1], 0.2, 0.2).unwrap();
    let src = BumpField { bump, coeff: Biquaternion::ONE };
    let p = SpacetimePoint::new(1.2, [0.9, 0.3, -0.2]);
    let conv = retarded_convolve(&ConeLayerKernel::wave(), &src, &p, &QuadratureSpec::new(64, 32)).unwrap();
    // (ψ ∗ F)(p) = ⟨ψ, F(p − ·)⟩.
    let reflected = Bump { tau0: p.tau - bump.tau0, x0: real::sub(p.x, bump.x0), ..bump };
    let pair = pair_wave_fundamental(&reflected, &QuadratureSpec::new(64, 32)).unwrap();
    assert!((conv.scalar - pair).norm() < 1e-6 * pair.norm(), "{} vs {pair}", conv.scalar);
    // A narrow source behaves like δ: the potential is ≈ 1/(4πr) on the cone shell.
    assert!(conv.vector.norm() == 0.0);
}

#[test]
fn quadrature_budget_is_enforced() {
    let bump = Bump::normalized(0.3, [0.5, 0.0, 0.0], 0.6, 0.6).unwrap();
    let src = BumpField { bump, coeff: Biquaternion::ONE };
    let p = SpacetimePoint::new(1.0, [-0.2, 0.0, 0.0]);
    let tight = QuadratureSpec { tolerance: Some(1e-12), ..QuadratureSpec::new(8, 4) };
    assert!(matches!(
        retarded_convolve(&ConeLayerKernel::wave(), &src, &p, &tight),
        Err(Error::QuadratureBudgetExceeded { .. })
    ));
}

/// `K = C e^{i((ξ,x) + s‖ξ‖τ)}` with `ξ̂∘C = iC`, so that `∇^s K = 0`.
struct PlaneWave {
    xi: [f64; 3],
    coeff: Biquaternion,
    sign: Sign,
}

impl PlaneWave {
    fn new(xi: [f64; 3], y: Biquaternion, sign: Sign) -> Self {
        let n = real::normalize(xi).unwrap();
        let nb = Biquaternion::from_vector(CVec3::from_real(n));
        PlaneWave { xi, coeff: (y - nb * y * I) * 0.5, sign }
    }

    fn at(&self, p: &SpacetimePoint) -> Biquaternion {
        let ph = real::dot(self.xi, p.x) + self.sign.as_f64() * real::norm(self.xi) * p.tau;
        self.coeff * (I * ph).exp()
    }
}

impl BqField for PlaneWave {
    fn eval(&self, p: &SpacetimePoint) -> crate::Result<Biquaternion> {
        Ok(self.at(p))
    }
    fn partials(&self, p: &SpacetimePoint) -> Option<crate::Result<Partials>> {
        let k = self.at(p);
        let w = self.sign.as_f64() * real::norm(self.xi);
        Some(Ok(Partials([w, self.xi[0], self.xi[1], self.xi[2]].map(|v| k * (I * v)))))
    }
}

fn some_bq() -> Biquaternion {
    Biquaternion::from_components([c(0.3, -0.2), c(1.0, 0.4), c(-0.5, 0.1), c(0.2, 0.7)])
}

#[test]
fn plane_wave_is_homogeneous_solution() {
    for sign in [Sign::Plus, Sign::Minus] {
        let k = PlaneWave::new([0.6, -0.8, 0.5], some_bq(), sign);
        let g = crate::diffops::bigradient(sign, &k, &SpacetimePoint::new(0.2, [0.1, 0.0, 0.3]), 1e-3).unwrap();
        assert!(g.norm() < 1e-14);
    }
}

#[test]
fn kirchhoff_reproduces_plane_waves() {
    let opts = SolveOptions::new(QuadratureSpec::new(16, 16));
    for route in [DerivativeRoute::FiniteDifference, DerivativeRoute::UnderIntegral] {
        for sign in [Sign::Plus, Sign::Minus] {
            let k = PlaneWave::new([0.6, -0.8, 0.5], some_bq(), sign);
            for p in [SpacetimePoint::new(0.5, [0.1, 0.2, -0.3]), SpacetimePoint::new(1.3, [-0.4, 0.0, 0.6])] {
                let got = biwave_solve(sign, &crate::diffops::ZeroField, Some(&k), &p, &opts.with_route(route)).unwrap();
                let want = k.at(&p);
                assert!(got.distance(&want) < 1e-6 * want.norm(), "{route:?} {sign:?}: {}", got.distance(&want));
            }
        }
    }
    let zero = biwave_solve(Sign::Plus, &crate::diffops::ZeroField, None, &SpacetimePoint::new(1.0, [0.0; 3]), &opts).unwrap();
    assert_eq!(zero, Biquaternion::ZERO);
}

#[test]
fn kirchhoff_is_idempotent_on_free_waves() {
    let opts = SolveOptions::new(QuadratureSpec::new(16, 16));
    let k = PlaneWave::new([0.3, 0.4, -0.2], some_bq(), Sign::Minus);
    let first = ClosureField(|p: &SpacetimePoint| biwave_solve(Sign::Minus, &crate::diffops::ZeroField, Some(&k), p, &opts));
    let at0 = ClosureField(|p: &SpacetimePoint| first.eval(&SpacetimePoint::new(1e-2 + p.tau, p.x)));
    let p = SpacetimePoint::new(0.7, [0.2, 0.1, 0.0]);
    // Data taken from the produced solution at τ = 0.01 and evolved for τ − 0.01.
    let second = biwave_solve(Sign::Minus, &crate::diffops::ZeroField, Some(&at0), &SpacetimePoint::new(p.tau - 1e-2, p.x), &opts).unwrap();
    assert!(second.distance(&first.eval(&p).unwrap()) < 1e-5);
}

fn smooth_source() -> BumpField {
    BumpField {
        bump: Bump::new(0.5, [0.1, 0.0, -0.1], 0.4, 0.5, 1.0).unwrap(),
        coeff: Biquaternion::from_components([c(0.5, 0.0), c(0.0, 1.0), c(-0.3, 0.2), c(0.1, 0.0)]),
    }
}

#[test]
fn biwave_solution_residual_is_small() {
    let g = smooth_source();
    let opts = SolveOptions::new(QuadratureSpec::new(40, 16));
    for route in [DerivativeRoute::FiniteDifference, DerivativeRoute::UnderIntegral] {
        for sign in [Sign::Plus, Sign::Minus] {
            for p in [SpacetimePoint::new(0.6, [0.1, 0.1, 0.0]), SpacetimePoint::new(1.0, [0.3, -0.2, 0.1])] {
                let r = biwave_residual(sign, &g, None, &p, &opts.with_route(route), 1e-3).unwrap();
                let scale = g.eval(&p).unwrap().norm().max(1.0);
                assert!(r.norm() < 1e-2 * scale, "{route:?} {sign:?} {p:?}: {}", r.norm());
            }
        }
    }
}

#[test]
fn routes_agree() {
    let g = smooth_source();
    let opts = SolveOptions::new(QuadratureSpec::new(40, 16));
    let p = SpacetimePoint::new(0.8, [0.2, 0.0, -0.1]);
    let a = biwave_solve(Sign::Plus, &g, None, &p, &opts).unwrap();
    let b = biwave_solve(Sign::Plus, &g, None, &p, &opts.with_route(DerivativeRoute::UnderIntegral)).unwrap();
    assert!(a.distance(&b) < 1e-5 * a.norm().max(1.0), "{}", a.distance(&b));
}

#[test]
fn md_solution_residual_and_zero_mass_limit() {
    let f = smooth_source();
    let opts = SolveOptions::new(QuadratureSpec::new(40, 16));
    let p = SpacetimePoint::new(0.9, [0.0, 0.1, 0.1]);
    for mass in [c(0.0, 1.5), c(0.3, -0.4)] {
        for route in [DerivativeRoute::FiniteDifference, DerivativeRoute::UnderIntegral] {
            let r = md_residual(mass, Sign::Minus, &f, &p, &opts.with_route(route), 1e-3).unwrap();
            assert!(r.norm() < 1e-2, "{mass} {route:?}: {}", r.norm());
        }
    }
    let md0 = md_solve(c(0.0, 0.0), Sign::Plus, &f, &p, &opts).unwrap();
    let bw = biwave_solve(Sign::Plus, &f, None, &p, &opts).unwrap();
    assert!(md0.distance(&bw) < 1e-14);
    let zero = md_solve(c(0.0, 2.0), Sign::Plus, &crate::diffops::ZeroField, &p, &opts).unwrap();
    assert_eq!(zero, Biquaternion::ZERO);
}

#[test]
fn maxwell_kirchhoff() {
    let opts = SolveOptions::new(QuadratureSpec::new(16, 16));
    let p = SpacetimePoint::new(0.8, [0.1, 0.0, 0.2]);
    let zero = kirchhoff_maxwell(&crate::diffops::ZeroField, None, &p, &opts).unwrap();
    assert_eq!(zero, Biquaternion::ZERO);
    // Free vacuum wave: ∇⁺A = 0.
    let a = PlaneWave::new([0.0, 0.0, 1.2], Biquaternion::from_vector(CVec3::from_real([1.0, 0.0, 0.0])), Sign::Plus);
    assert!(a.coeff.scalar.norm() < 1e-15);
    let got = kirchhoff_maxwell(&crate::diffops::ZeroField, Some(&a), &p, &opts).unwrap();
    assert!(got.distance(&a.at(&p)) < 1e-6);
    // Charge pulse.
    let theta = BumpField {
        bump: Bump::new(0.4, [0.0; 3], 0.35, 0.5, 1.0).unwrap(),
        coeff: Biquaternion::from_components([c(0.0, 1.0), c(0.2, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
    };
    let opts = SolveOptions::new(QuadratureSpec::new(40, 16));
    let r = maxwell_solution_residual(&theta, None, &SpacetimePoint::new(0.6, [0.1, 0.0, 0.1]), &opts, 1e-3).unwrap();
    assert!(r.norm() < 1e-2, "{}", r.norm());
}

#[test]
fn homogeneous_superpositions() {
    let q = QuadratureSpec::new(24, 8);
    let xi0 = [0.8, 0.0, 0.6];
    let narrow = SpatialBump::normalized(xi0, 1e-3).unwrap();
    let p = SpacetimePoint::new(0.7, [0.3, -0.2, 0.1]);
    for sign in [Sign::Plus, Sign::Minus] {
        let got = homogeneous_solution(HomogeneousKind::Wave, &narrow, sign, &p, &q).unwrap();
        let want = (I * (real::dot(xi0, p.x) + sign.as_f64() * p.tau)).exp();
        assert!((got - want).norm() < 1e-5, "{got} vs {want}");
    }
    let zero = SpatialBump::new([0.0; 3], 1.0, 0.0).unwrap();
    assert_eq!(homogeneous_solution(HomogeneousKind::Wave, &zero, Sign::Plus, &p, &q).unwrap(), c(0.0, 0.0));
    let bad = HomogeneousKind::Kgfsh { mass: c(0.1, 1.0) };
    assert!(matches!(homogeneous_solution(bad, &narrow, Sign::Plus, &p, &q), Err(Error::UnsupportedMass { .. })));
    assert!(admits_homogeneous_solutions(c(0.0, 3.0)) && !admits_homogeneous_solutions(c(1.0, 0.0)));
}

#[test]
fn homogeneous_solutions_satisfy_their_equations() {
    let q = QuadratureSpec::new(24, 8);
    let density = SpatialBump::new([0.5, -0.3, 0.2], 0.4, 1.0).unwrap();
    let p = SpacetimePoint::new(0.4, [0.1, 0.2, -0.1]);
    for (kind, mass) in [(HomogeneousKind::Wave, c(0.0, 0.0)), (HomogeneousKind::Kgfsh { mass: c(0.0, 0.8) }, c(0.0, 0.8))] {
        for sign in [Sign::Plus, Sign::Minus] {
            let u = HomogeneousField { kind, density: &density, sign, quad: q };
            let scale = u.density.eval([0.5, -0.3, 0.2]).norm();
            let errs: Vec<f64> = [1e-2, 5e-3]
                .iter()
                .map(|&h| kgfsh_apply(mass, &u, &p, h).unwrap().norm() / scale)
                .collect();
            assert!(errs[1] < 1e-2 && errs[1] < errs[0], "{errs:?}");
        }
    }
}

fn spatial_source() -> SpatialBumpField {
    SpatialBumpField {
        bump: SpatialBump::new([0.1, -0.1, 0.0], 0.6, 1.0).unwrap(),
        coeff: Biquaternion::from_components([c(1.0, 0.0), c(0.0, 0.5), c(0.3, 0.0), c(0.0, -0.2)]),
    }
}

#[test]
fn harmonic_solution_residual() {
    let f = spatial_source();
    let opts = SolveOptions::new(QuadratureSpec::new(48, 16));
    for route in [DerivativeRoute::FiniteDifference, DerivativeRoute::UnderIntegral] {
        for (omega, rho) in [(1.0, 0.5), (0.0, 2.0), (-3.0, 1.0)] {
            for sign in [Sign::Plus, Sign::Minus] {
                for x in [[0.2, 0.0, 0.1], [2.0, 1.0, -1.0]] {
                    let r = harmonic_residual(omega, rho, sign, &f, x, c(1.0, 0.0), &opts.with_route(route), 1e-3).unwrap();
                    assert!(r.norm() < 1e-2, "{route:?} ω={omega} ρ={rho} {sign:?} {x:?}: {}", r.norm());
                }
            }
        }
    }
    assert_eq!(
        harmonic_md_solve(1.0, -1.0, Sign::Plus, &f, [0.0; 3], c(1.0, 0.0), &opts),
        Err(Error::ZeroWaveNumber)
    );
}

#[test]
fn harmonic_kernel_family_and_far_field() {
    // (Δ + k²)χ = δ, paired with a bump: ⟨χ, (Δ + k²)φ⟩ = φ(0).
    let phi = SpatialBump::new([0.1, 0.0, 0.0], 0.8, 1.0).unwrap();
    let q = QuadratureSpec::new(96, 32);
    for a in [c(1.0, 0.0), c(0.0, 0.0), c(0.4, 0.3)] {
        let chi = HarmonicKernel::new(1.7, a).unwrap();
        let ball = q.shell(0.0, 0.9).unwrap();
        let mut acc = Complex::new(0.0, 0.0);
        for n in &ball.nodes {
            let y = real::scale(n.dir, n.r);
            acc += chi.value(n.r) * (phi.laplacian(y) + 1.7 * 1.7 * phi.value(y)) * n.weight;
        }
        assert!((acc - phi.value([0.0; 3])).norm() < 1e-6, "{a}: {acc}");
    }
    // A narrow unit source radiates the kernel itself.
    let k = 2.0;
    let src = SpatialBumpField { bump: SpatialBump::normalized([0.0; 3], 0.05).unwrap(), coeff: Biquaternion::ONE };
    let chi = HarmonicKernel::new(k, c(1.0, 0.0)).unwrap();
    for x in [[3.0, 0.0, 0.0], [0.0, 2.0, 2.0]] {
        let conv = spatial_convolve(&chi, &src, x, &QuadratureSpec::new(32, 8)).unwrap();
        let r = real::norm(x);
        assert!((conv.scalar - chi.value(r)).norm() < 1e-3 * chi.value(r).norm());
    }
    assert!(HarmonicKernel::new(0.0, c(1.0, 0.0)).is_err());
}

#[test]
fn static_limit_approaches_laplace_kernel() {
    let src = SpatialBumpField { bump: SpatialBump::normalized([0.0; 3], 0.2).unwrap(), coeff: Biquaternion::ONE };
    let x = [1.0, 0.5, 0.0];
    let laplace = -1.0 / (4.0 * std::f64::consts::PI * real::norm(x));
    let mut prev = f64::INFINITY;
    for rho in [0.5, 0.1, 0.02] {
        let chi = HarmonicKernel::new(rho, c(0.5, 0.0)).unwrap();
        let v = spatial_convolve(&chi, &src, x, &QuadratureSpec::new(32, 8)).unwrap().scalar;
        let err = (v - laplace).norm();
        assert!(err < prev);
        prev = err;
    }
    assert!(prev < 1e-3 * laplace.abs());
}

#[test]
fn shock_gaps_from_constraint_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..50 {
        let n = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let basis = shock_constraint_kernel(n).unwrap();
        assert_eq!(basis.len(), 4);
        let gap = random_admissible_gap(n, &mut rng).unwrap();
        assert!(shock_gap_check(&gap).max_abs() < 1e-12);
        let y = Biquaternion::from_components(std::array::from_fn(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))));
        let proj = project_gap(n, &y).unwrap();
        assert!(shock_gap_check(&proj).max_abs() < 1e-12);
        // A generic jump violates both forms together.
        let raw = shock_gap_check(&ShockGap::new(n, y).unwrap());
        assert!(raw.residual.norm() > 1e-6 && (raw.longitudinal.norm() + raw.transversal.norm()) > 1e-6);
    }
    let zero = shock_gap_check(&ShockGap::new([0.0, 0.0, 1.0], Biquaternion::ZERO).unwrap());
    assert_eq!(zero.max_abs(), 0.0);
    assert_eq!(ShockGap::new([0.0; 3], Biquaternion::ZERO), Err(Error::InvalidAxis));
}

#[test]
fn shock_forms_are_equivalent() {
    // Zero biquaternionic residual iff zero longitudinal and transversal parts.
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let n = [0.3, -0.4, 0.5];
    let basis = shock_constraint_kernel(n).unwrap();
    for _ in 0..100 {
        let mut gap: Biquaternion = basis.iter().map(|b| *b * rng.random_range(-1.0..1.0)).sum();
        let check = shock_gap_check(&ShockGap::new(n, gap).unwrap());
        assert!(check.residual.norm() < 1e-12);
        gap += Biquaternion::basis(rng.random_range(0..4)) * c(rng.random_range(0.1..1.0), 0.0);
        let check = shock_gap_check(&ShockGap::new(n, gap).unwrap());
        let split = check.longitudinal.norm() + check.transversal.norm();
        assert!(check.residual.norm() > 1e-3 && split > 1e-3);
    }
}

#[test]
fn spatial_convolution_needs_support() {
    let f = FnSpatialField::new(|_| Biquaternion::ONE);
    let chi = HarmonicKernel::new(1.0, c(1.0, 0.0)).unwrap();
    assert_eq!(spatial_convolve(&chi, &f, [0.0; 3], &quad()), Err(Error::UnboundedSupport));
    assert!(f.support().is_none());
}
