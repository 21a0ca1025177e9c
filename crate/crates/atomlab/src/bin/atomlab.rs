fn main() {
    // die quietly when the consumer closes the pipe (e.g. `atomlab ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(atomlab::cli::run(std::env::args_os()));
}
