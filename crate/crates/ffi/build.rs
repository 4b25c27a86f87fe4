#[cfg(feature = "ffi-headers")]
fn generate_header() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR");
    std::fs::create_dir_all(format!("{crate_dir}/include")).expect("include dir");
    cbindgen::generate(&crate_dir)
        .expect("header generation")
        .write_to_file(format!("{crate_dir}/include/kolmoreg.h"));
}

fn main() {
    #[cfg(feature = "ffi-headers")]
    generate_header();
}
