//! Every example under `examples/` runs to completion.

macro_rules! example {
    ($module:ident, $test:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect($file);
        }
    };
}

example!(gamma_identities, gamma_identities_runs, "gamma_identities.rs");
example!(gegenbauer_gf, gegenbauer_generating_function_runs, "gegenbauer_generating_function.rs");
example!(weierstrass, weierstrass_kernel_runs, "weierstrass_kernel.rs");
example!(ferrers, ferrers_on_the_cut_runs, "ferrers_on_the_cut.rs");
example!(riesz, mellin_riesz_runs, "mellin_riesz.rs");
example!(h_transform, mellin_h_proposition_runs, "mellin_h_proposition.rs");
example!(by_parts, by_parts_continuation_runs, "by_parts_continuation.rs");
example!(corollary, corollary_sign_runs, "corollary_sign.rs");
example!(h_bound, h_growth_bound_runs, "h_growth_bound.rs");
example!(sweep, verification_sweep_runs, "verification_sweep.rs");
