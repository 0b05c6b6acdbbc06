// Dense eigenproblems go through LAPACK `dgeev` and BLAS `dgemm` from system
// libraries. The reference (netlib) builds are preferred: the OpenBLAS 0.3.20
// `dnrm2` kernel on some x86 targets sends `dgeev` into an endless QR sweep.
//
// GSPECTRA_LAPACK_DIR / GSPECTRA_BLAS_DIR point at the directories holding
// liblapack.so and libblas.so; GSPECTRA_LAPACK_LIB / GSPECTRA_BLAS_LIB
// override the library names (for example `openblas` for both).
use std::env;
use std::path::Path;

const DEFAULT_DIRS: [(&str, &str); 2] = [
    ("GSPECTRA_LAPACK_DIR", "/usr/lib/x86_64-linux-gnu/lapack"),
    ("GSPECTRA_BLAS_DIR", "/usr/lib/x86_64-linux-gnu/blas"),
];

fn main() {
    let mut dirs = Vec::new();
    for (var, default) in DEFAULT_DIRS {
        println!("cargo:rerun-if-env-changed={var}");
        match env::var(var) {
            Ok(dir) => dirs.push(dir),
            Err(_) if Path::new(default).is_dir() => dirs.push(default.to_string()),
            Err(_) => {}
        }
    }
    // DT_RPATH rather than DT_RUNPATH: it also governs LAPACK's own BLAS lookup.
    println!("cargo:rustc-link-arg=-Wl,--disable-new-dtags");
    for dir in &dirs {
        println!("cargo:rustc-link-search=native={dir}");
        println!("cargo:rustc-link-arg=-Wl,-rpath,{dir}");
    }
    // Picked up by dependents as DEP_GSPECTRA_LAPACK_RPATH.
    println!("cargo:rpath={}", dirs.join(":"));

    for (var, default) in [("GSPECTRA_LAPACK_LIB", "lapack"), ("GSPECTRA_BLAS_LIB", "blas")] {
        println!("cargo:rerun-if-env-changed={var}");
        let lib = env::var(var).unwrap_or_else(|_| default.into());
        println!("cargo:rustc-link-lib=dylib={lib}");
    }
}
