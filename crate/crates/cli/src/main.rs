fn main() {
    holtor_cli::run();
}
