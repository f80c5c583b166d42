#include "brd/cli.hpp"

int main(int argc, char** argv)
{
    return brd::run_cli(argc, argv);
}
