fn main() {
    let (out, code) = hopf_tr::cli::run(std::env::args_os().skip(1));
    print!("{out}");
    std::process::exit(code);
}
