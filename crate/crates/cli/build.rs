// Binaries need the same runtime search path for LAPACK/BLAS as the library.
fn main() {
    println!("cargo:rustc-link-arg=-Wl,--disable-new-dtags");
    if let Ok(rpath) = std::env::var("DEP_GSPECTRA_LAPACK_RPATH") {
        for dir in rpath.split(':').filter(|d| !d.is_empty()) {
            println!("cargo:rustc-link-arg=-Wl,-rpath,{dir}");
        }
    }
}
