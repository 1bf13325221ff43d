fn main() {
    println!("cargo:rerun-if-changed=src");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    match cbindgen::generate(&crate_dir) {
        Ok(header) => {
            header.write_to_file(format!("{crate_dir}/include/camonoid.h"));
        }
        Err(err) => panic!("cbindgen failed: {err}"),
    }
}
