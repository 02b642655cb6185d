/*
 * File-in, file-out shim around one generated network bundle.
 *
 * Build with the bundle sources on the link line and four macros on the
 * compile line, all taken from the bundle's manifest:
 *
 *   -DAXH_HEADER="\"ax_net.h\""   bundle header to include
 *   -DAXH_ENTRY=ax_infer          entry point symbol
 *   -DAXH_IN_LEN=AX_IN_LEN        input byte count macro from the header
 *   -DAXH_NUM_CLASSES=AX_NUM_CLASSES
 *
 * Usage: runner input_file output_file
 *
 * Reads exactly AXH_IN_LEN raw int8 bytes, runs the network, and writes
 * AXH_NUM_CLASSES logit bytes followed by the predicted class as a 4-byte
 * little-endian unsigned integer. Exits 0 on success, 2 on any I/O problem
 * or input length mismatch. The shim itself does no tensor arithmetic;
 * every payload byte comes from the entry point.
 */

#include <stdint.h>
#include <stdio.h>

#include AXH_HEADER

#ifndef AXH_ENTRY
#error "define AXH_ENTRY to the bundle entry point"
#endif
#ifndef AXH_IN_LEN
#error "define AXH_IN_LEN to the bundle input length macro"
#endif
#ifndef AXH_NUM_CLASSES
#error "define AXH_NUM_CLASSES to the bundle class count macro"
#endif

static int8_t input[AXH_IN_LEN];
static int8_t logits[AXH_NUM_CLASSES];

int main(int argc, char **argv)
{
    FILE *f;
    size_t got;
    int32_t cls;
    uint32_t u;
    uint8_t tail[4];

    if (argc != 3) {
        fprintf(stderr, "usage: %s input_file output_file\n", argv[0]);
        return 2;
    }

    f = fopen(argv[1], "rb");
    if (f == NULL) {
        perror(argv[1]);
        return 2;
    }
    got = fread(input, 1, (size_t)AXH_IN_LEN, f);
    if (got != (size_t)AXH_IN_LEN || fgetc(f) != EOF) {
        fprintf(stderr, "%s: need exactly %ld bytes\n", argv[1], (long)AXH_IN_LEN);
        fclose(f);
        return 2;
    }
    fclose(f);

    cls = AXH_ENTRY(input, logits);

    f = fopen(argv[2], "wb");
    if (f == NULL) {
        perror(argv[2]);
        return 2;
    }
    u = (uint32_t)cls;
    tail[0] = (uint8_t)(u & 0xFFu);
    tail[1] = (uint8_t)((u >> 8) & 0xFFu);
    tail[2] = (uint8_t)((u >> 16) & 0xFFu);
    tail[3] = (uint8_t)((u >> 24) & 0xFFu);
    if (fwrite(logits, 1, (size_t)AXH_NUM_CLASSES, f) != (size_t)AXH_NUM_CLASSES ||
        fwrite(tail, 1, 4, f) != 4 || fclose(f) != 0) {
        fprintf(stderr, "%s: write failed\n", argv[2]);
        return 2;
    }
    return 0;
}
