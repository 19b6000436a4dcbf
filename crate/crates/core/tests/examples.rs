#[path = "../examples/bottleneck_matching.rs"]
mod bottleneck_matching;

#[path = "../examples/boxes_and_corners.rs"]
mod boxes_and_corners;

#[path = "../examples/finite_abelian_images.rs"]
mod finite_abelian_images;

#[path = "../examples/grothendieck_classes.rs"]
mod grothendieck_classes;

#[path = "../examples/interpolate_modules.rs"]
mod interpolate_modules;

#[path = "../examples/json_files.rs"]
mod json_files;

#[path = "../examples/mobius_diagram.rs"]
mod mobius_diagram;

#[path = "../examples/module_rank_function.rs"]
mod module_rank_function;

#[path = "../examples/property_suites.rs"]
mod property_suites;

#[path = "../examples/stability_check.rs"]
mod stability_check;

#[path = "../examples/sublevel_homology.rs"]
mod sublevel_homology;

#[path = "../examples/verify_interleaving.rs"]
mod verify_interleaving;


#[test]
fn bottleneck_matching_runs() {
    bottleneck_matching::run().unwrap();
}

#[test]
fn boxes_and_corners_runs() {
    boxes_and_corners::run().unwrap();
}

#[test]
fn finite_abelian_images_runs() {
    finite_abelian_images::run().unwrap();
}

#[test]
fn grothendieck_classes_runs() {
    grothendieck_classes::run().unwrap();
}

#[test]
fn interpolate_modules_runs() {
    interpolate_modules::run().unwrap();
}

#[test]
fn json_files_runs() {
    json_files::run().unwrap();
}

#[test]
fn mobius_diagram_runs() {
    mobius_diagram::run().unwrap();
}

#[test]
fn module_rank_function_runs() {
    module_rank_function::run().unwrap();
}

#[test]
fn property_suites_runs() {
    property_suites::run().unwrap();
}

#[test]
fn stability_check_runs() {
    stability_check::run().unwrap();
}

#[test]
fn sublevel_homology_runs() {
    sublevel_homology::run().unwrap();
}

#[test]
fn verify_interleaving_runs() {
    verify_interleaving::run().unwrap();
}
