//! Binary entry point; all behavior lives in [`gradbench::cli`].

fn main() {
    std::process::exit(gradbench::cli::run());
}
