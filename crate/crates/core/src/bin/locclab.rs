use clap::Parser;

fn main() {
    // Die quietly on a closed pipe (`locclab render ... | head`) instead of
    // panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = locclab::cli::Cli::parse();
    std::process::exit(locclab::cli::run(cli) as i32);
}
