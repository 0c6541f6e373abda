#include "qalg/runner.hpp"

int main(int argc, char** argv) { return qalg::run_cli(argc, argv); }
