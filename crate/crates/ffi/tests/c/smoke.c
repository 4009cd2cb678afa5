#include <stdio.h>
#include <string.h>
#include "qcorr.h"

int main(void) {
    const char *cnot =
        "{\"dim\":4,\"entries\":[[1,0],[0,0],[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],"
        "[0,0],[0,0],[0,0],[1,0],[0,0],[0,0],[1,0],[0,0]]}";
    QcorrMatrix *m = NULL;
    if (qcorr_matrix_from_json(cnot, &m) != QCORR_STATUS_OK) return 1;
    uint32_t mask = 0;
    if (qcorr_classify(m, 1e-9, &mask) != QCORR_STATUS_OK) return 2;
    qcorr_matrix_free(m);
    uint32_t expected = (1u << QCORR_COSET_I) | (1u << QCORR_COSET_CNOT12) | (1u << QCORR_COSET_CNOT21);
    if (mask != expected) return 3;

    int64_t queries = 0;
    if (qcorr_query_complexity(QCORR_PROBLEM_BV, 3, "OS", 1e-9, &queries) != QCORR_STATUS_OK) return 4;
    if (queries != 4) return 5;

    const uint8_t k[3] = {1, 0, 1};
    QcorrBv *bv = NULL;
    if (qcorr_bv_new(3, 0, k, &bv) != QCORR_STATUS_OK) return 6;
    uint8_t out[3] = {0};
    uint32_t calls = 0;
    if (qcorr_run_bv(bv, out, 3, &calls) != QCORR_STATUS_OK) return 7;
    qcorr_bv_free(bv);
    if (memcmp(out, k, 3) != 0 || calls != 1) return 8;

    if (qcorr_query_complexity(QCORR_PROBLEM_PARITY, 3, "OS", 1e-9, &queries) != QCORR_STATUS_SIZE_LIMIT) return 9;
    if (qcorr_last_error() == NULL) return 10;
    printf("ok\n");
    return 0;
}
