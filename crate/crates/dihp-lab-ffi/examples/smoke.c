/* Minimal C consumer: parse an instance, print its LP report, run a suite.
 *
 * Build from the repository root:
 *   cargo build --release -p dihp-lab-ffi
 *   cc -Icrates/dihp-lab-ffi/include crates/dihp-lab-ffi/examples/smoke.c \
 *      target/release/libdihp_lab_ffi.a -lpthread -ldl -lm -o smoke
 */
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "dihp_lab.h"

static const char *TRIANGLE =
    "{\"alphabet_size\":2,\"arity\":2,"
    "\"predicates\":[{\"name\":\"cut\",\"truth_table\":"
    "[[[0,0],0],[[1,0],1],[[0,1],1],[[1,1],0]]}],"
    "\"variables\":[\"a\",\"b\",\"c\"],"
    "\"constraints\":[{\"vars\":[\"a\",\"b\"],\"predicate\":\"cut\"},"
    "{\"vars\":[\"b\",\"c\"],\"predicate\":\"cut\"},"
    "{\"vars\":[\"c\",\"a\"],\"predicate\":\"cut\"}]}";

int main(void) {
    printf("dihp-lab %s\n", dihp_lab_version());

    DihpLabInstance *inst = NULL;
    if (dihp_lab_instance_parse(TRIANGLE, &inst) != DIHP_LAB_STATUS_OK) {
        fprintf(stderr, "parse failed: %s\n", dihp_lab_last_error_message());
        return 1;
    }

    char *report = NULL;
    if (dihp_lab_lp_report(inst, &report) != DIHP_LAB_STATUS_OK) {
        fprintf(stderr, "lp failed: %s\n", dihp_lab_last_error_message());
        dihp_lab_instance_free(inst);
        return 1;
    }
    printf("lp report: %s\n", report);
    dihp_lab_string_free(report);

    char *manifest = NULL;
    DihpLabStatus code = dihp_lab_verify("fourier", 42, &manifest);
    if (code != DIHP_LAB_STATUS_OK) {
        fprintf(stderr, "verify returned %d: %s\n", (int)code, dihp_lab_last_error_message());
        dihp_lab_string_free(manifest);
        dihp_lab_instance_free(inst);
        return 1;
    }
    printf("fourier suite manifest: %zu bytes\n", manifest ? strlen(manifest) : 0);
    dihp_lab_string_free(manifest);
    dihp_lab_instance_free(inst);
    return 0;
}
