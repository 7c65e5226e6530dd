fn main() {
    std::process::exit(noma_perf::cli::main());
}
