fn main() {
    let budget = std::env::var(scottmax_cli::BUDGET_ENV).ok();
    let code = scottmax_cli::run(
        std::env::args_os(),
        budget.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
