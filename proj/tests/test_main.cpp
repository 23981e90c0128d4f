#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "pdpair/snf.hpp"

int main(int argc, char** argv) {
    pdpair::set_snf_self_check(true);
    doctest::Context ctx;
    ctx.applyCommandLine(argc, argv);
    return ctx.run();
}
