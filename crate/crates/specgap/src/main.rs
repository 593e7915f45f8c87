fn main() {
    // die quietly instead of panicking when stdout closes early, as in
    // `specgap bound ... | head`
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(specgap::run());
}
