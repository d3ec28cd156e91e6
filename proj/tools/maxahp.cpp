#include <iostream>
#include <string>
#include <vector>

#include "maxahp/cli.hpp"
#include "maxahp/http_server.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto serve = [](const std::string& host, int port, std::size_t max_n, std::size_t max_m) {
    if (!maxahp::api::serve(host, port, {max_n, max_m})) {
      std::cerr << "error: cannot listen on " << host << ':' << port << '\n';
      return 1;
    }
    return 0;
  };
  return maxahp::cli::run_command(args, std::cout, std::cerr, serve);
}
