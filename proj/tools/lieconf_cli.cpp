// lieconf command line driver. Subcommands are wired up as the library
// grows; see README for the interface.
#include <cstdio>

int main(int argc, char** argv) {
  (void)argc;
  (void)argv;
  std::fprintf(stderr, "lieconf: not yet wired\n");
  return 2;
}
