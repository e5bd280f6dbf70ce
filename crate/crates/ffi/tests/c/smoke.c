#include <stdio.h>
#include "hypersample.h"

int main(void) {
    size_t d[] = {2, 2, 2, 1, 1, 1};
    HsInstance *inst = NULL;
    if (hs_instance_new(d, 6, 3, &inst) != HS_STATUS_OK) return 1;
    HsSampler *s = NULL;
    if (hs_sampler_config_new(inst, &s) != HS_STATUS_OK) return 2;
    HsHypergraph *h = NULL;
    uint64_t it = 0;
    if (hs_sample(s, 7, 0, 0, &h, &it) != HS_STATUS_OK) return 3;
    size_t buf[9];
    if (hs_hypergraph_copy_edges(h, buf, 9) != HS_STATUS_OK) return 4;
    for (size_t e = 0; e < 3; e++) printf("%zu %zu %zu\n", buf[3 * e], buf[3 * e + 1], buf[3 * e + 2]);
    uint64_t b = 0, bs = 0, hc = 0;
    if (hs_enumerate_counts(inst, 1000000, &b, &bs, &hc) != HS_STATUS_OK) return 5;
    printf("B=%llu B*=%llu H=%llu\n", (unsigned long long)b, (unsigned long long)bs, (unsigned long long)hc);
    hs_hypergraph_free(h);
    hs_sampler_free(s);
    hs_instance_free(inst);
    return 0;
}
