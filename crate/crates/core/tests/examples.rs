macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(groups_and_duality, "groups_and_duality.rs");
example!(automorphisms, "automorphisms.rs");
example!(fourier_layer, "fourier_layer.rs");
example!(symmetry_criterion, "symmetry_criterion.rs");
example!(decomposition, "decomposition.rs");
example!(finite_difference_transcript, "finite_difference_transcript.rs");
example!(real_line_extension, "real_line_extension.rs");
example!(order_two_counterexample, "order_two_counterexample.rs");

#[test]
fn groups_and_duality_runs() {
    groups_and_duality::run_example().expect("groups example should run");
}

#[test]
fn automorphisms_runs() {
    automorphisms::run_example().expect("automorphisms example should run");
}

#[test]
fn fourier_layer_runs() {
    fourier_layer::run_example().expect("fourier example should run");
}

#[test]
fn symmetry_criterion_runs() {
    symmetry_criterion::run_example().expect("symmetry example should run");
}

#[test]
fn decomposition_runs() {
    decomposition::run_example().expect("decomposition example should run");
}

#[test]
fn finite_difference_transcript_runs() {
    finite_difference_transcript::run_example().expect("transcript example should run");
}

#[test]
fn real_line_extension_runs() {
    real_line_extension::run_example().expect("real line example should run");
}

#[test]
fn order_two_counterexample_runs() {
    order_two_counterexample::run_example().expect("counterexample example should run");
}
